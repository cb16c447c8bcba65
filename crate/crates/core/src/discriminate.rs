//! Knot discrimination from noisy Jones estimates.
//!
//! A panel of braids is grouped into classes by exact Jones value. Each braid
//! is simulated many times, a `kσ` covariance ellipse is fitted to its cloud
//! of `V` estimates, and every pair of braids is judged distinct when their
//! ellipses do not overlap. Pairs from different classes that still overlap
//! are passive errors; pairs from the same class that do not overlap are
//! fatal errors.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{enumerate_words, BraidWord};
use crate::dqc1::NoiseModel;
use crate::error::{Error, Result};
use crate::fibrep::FibBasis;
use crate::jones::{eval_dqc1, eval_exact_with};
use crate::oracle::component_count;

/// Tolerance for grouping exact Jones values into classes.
pub const CLASS_TOL: f64 = 1e-6;
/// Floor on the standard deviation of a fitted ellipse.
pub const SIGMA_MIN: f64 = 1e-6;
/// Boundary sampling resolution of the overlap test.
pub const BOUNDARY_POINTS: usize = 256;
/// Default boundary scale: the 2σ ellipse holds `1 - e^{-2}` of a 2D Gaussian.
pub const DEFAULT_K_SIGMA: f64 = 2.0;
/// Success rate implied by 134/135 separated distinct pairs and 15/18
/// overlapping identical pairs in the NMR experiment.
pub const NMR_REFERENCE_RATE: f64 = 0.5 * (134.0 / 135.0 + 15.0 / 18.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureFilter {
    /// Every word, links included.
    All,
    /// Only words whose closure has one component.
    KnotsOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotClass {
    pub label: String,
    pub value_re: f64,
    pub value_im: f64,
    pub components: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PanelEntry {
    pub braid: BraidWord,
    pub class: usize,
    pub exact: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub strands: usize,
    pub crossings: usize,
    pub reps_per_class: usize,
    pub filter: ClosureFilter,
    pub classes: Vec<KnotClass>,
    pub entries: Vec<PanelEntry>,
}

impl Panel {
    pub fn selection_rule(&self) -> String {
        let scope = match self.filter {
            ClosureFilter::All => "all words",
            ClosureFilter::KnotsOnly => "words with one-component closures",
        };
        format!(
            "{scope} of length {} on {} strands, grouped by exact Jones value at tolerance {CLASS_TOL:e}; \
             first {} words of each class in lexicographic order (+1 < -1 < +2 < ...)",
            self.crossings, self.strands, self.reps_per_class
        )
    }

    pub fn label(&self, entry: &PanelEntry) -> &str {
        &self.classes[entry.class].label
    }
}

/// A word together with its exact value.
pub type ClassMember = (BraidWord, Complex64);

/// Groups words by exact Jones value, classes ordered by first appearance.
pub fn classify(words: &[BraidWord]) -> Result<Vec<(KnotClass, Vec<ClassMember>)>> {
    let mut out: Vec<(KnotClass, Vec<ClassMember>)> = Vec::new();
    let mut bases: Vec<FibBasis> = Vec::new();
    for b in words {
        if !bases.iter().any(|x| x.strands() == b.strands()) {
            bases.push(FibBasis::new(b.strands())?);
        }
        let basis = bases.iter().find(|x| x.strands() == b.strands()).unwrap();
        let v = eval_exact_with(b, basis)?.value;
        let rep = |c: &KnotClass| Complex64::new(c.value_re, c.value_im);
        match out
            .iter_mut()
            .find(|(c, _)| (rep(c) - v).norm() <= CLASS_TOL)
        {
            Some((class, members)) => {
                class.size += 1;
                members.push((b.clone(), v));
            }
            None => {
                let class = KnotClass {
                    label: format!("K{}", out.len() + 1),
                    value_re: v.re,
                    value_im: v.im,
                    components: component_count(b),
                    size: 1,
                };
                out.push((class, vec![(b.clone(), v)]));
            }
        }
    }
    Ok(out)
}

/// Deterministic panel of `reps_per_class` braids from every class.
pub fn select_panel(
    strands: usize,
    crossings: usize,
    reps_per_class: usize,
    filter: ClosureFilter,
) -> Result<Panel> {
    if reps_per_class == 0 {
        return Err(Error::Domain("reps per class must be at least 1".into()));
    }
    let words: Vec<BraidWord> = enumerate_words(strands, crossings)?
        .into_iter()
        .filter(|b| filter == ClosureFilter::All || component_count(b) == 1)
        .collect();
    let grouped = classify(&words)?;
    if grouped.iter().any(|(c, _)| c.size < reps_per_class) {
        return Err(Error::Shortfall {
            reps: reps_per_class,
            sizes: grouped.iter().map(|(c, _)| c.size).collect(),
        });
    }
    let mut classes = Vec::with_capacity(grouped.len());
    let mut entries = Vec::new();
    for (i, (class, members)) in grouped.into_iter().enumerate() {
        for (braid, exact) in members.into_iter().take(reps_per_class) {
            entries.push(PanelEntry {
                braid,
                class: i,
                exact,
            });
        }
        classes.push(class);
    }
    Ok(Panel {
        strands,
        crossings,
        reps_per_class,
        filter,
        classes,
        entries,
    })
}

/// Sample mean and covariance of a cloud in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseStats {
    pub mean: [f64; 2],
    /// Unbiased sample covariance of `(Re, Im)`, without the `SIGMA_MIN` floor.
    pub covariance: [[f64; 2]; 2],
    pub k_sigma: f64,
}

impl EllipseStats {
    /// Covariance used for geometry: padded by `SIGMA_MIN²·I` when nearly singular.
    pub fn shape(&self) -> [[f64; 2]; 2] {
        let [[a, b], [_, c]] = self.covariance;
        let floor = SIGMA_MIN * SIGMA_MIN;
        if min_eigenvalue(a, b, c) < floor {
            [[a + floor, b], [b, c + floor]]
        } else {
            self.covariance
        }
    }

    /// Mahalanobis distance of `p` from the mean under [`Self::shape`].
    pub fn mahalanobis(&self, p: [f64; 2]) -> f64 {
        let [[a, b], [_, c]] = self.shape();
        let det = a * c - b * b;
        let (x, y) = (p[0] - self.mean[0], p[1] - self.mean[1]);
        ((c * x * x - 2.0 * b * x * y + a * y * y) / det)
            .max(0.0)
            .sqrt()
    }

    /// `points` equally spaced (in parameter) points on the `k_sigma` boundary.
    pub fn boundary(&self, points: usize) -> Vec<[f64; 2]> {
        let [[a, b], [_, c]] = self.shape();
        let l11 = a.sqrt();
        let l21 = b / l11;
        let l22 = (c - l21 * l21).max(0.0).sqrt();
        (0..points)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / points as f64;
                let (u, v) = (self.k_sigma * th.cos(), self.k_sigma * th.sin());
                [self.mean[0] + l11 * u, self.mean[1] + l21 * u + l22 * v]
            })
            .collect()
    }

    /// Enclosed probability mass of a fitted 2D Gaussian.
    pub fn confidence(&self) -> f64 {
        1.0 - (-self.k_sigma * self.k_sigma / 2.0).exp()
    }
}

fn min_eigenvalue(a: f64, b: f64, c: f64) -> f64 {
    let mid = 0.5 * (a + c);
    let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
    mid - rad
}

/// Fits mean and unbiased covariance; boundary at Mahalanobis distance `k_sigma`.
pub fn ellipse_fit(samples: &[Complex64], k_sigma: f64) -> Result<EllipseStats> {
    if samples.len() < 3 {
        return Err(Error::InsufficientData {
            samples: samples.len(),
            needed: 3,
        });
    }
    if k_sigma.is_nan() || k_sigma <= 0.0 {
        return Err(Error::Domain(format!(
            "k_sigma must be positive, got {k_sigma}"
        )));
    }
    let n = samples.len() as f64;
    let mean: Complex64 = samples.iter().sum::<Complex64>() / n;
    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for s in samples {
        let d = s - mean;
        xx += d.re * d.re;
        xy += d.re * d.im;
        yy += d.im * d.im;
    }
    let k = n - 1.0;
    Ok(EllipseStats {
        mean: [mean.re, mean.im],
        covariance: [[xx / k, xy / k], [xy / k, yy / k]],
        k_sigma,
    })
}

/// Whether the two `kσ` ellipses intersect or one contains the other.
///
/// Each boundary is sampled at [`BOUNDARY_POINTS`] points. The ellipses
/// overlap when a centre or a boundary point of one lies inside the other,
/// or when the two boundary polygons cross. "Inside" allows a relative slack
/// of `1/cos(4π/N) - 1` (about 3e-4 for N = 256), so configurations tangent
/// within the sampling resolution count as overlapping.
pub fn ellipses_overlap(a: &EllipseStats, b: &EllipseStats) -> bool {
    let slack = 1.0 / (4.0 * PI / BOUNDARY_POINTS as f64).cos();
    let inside = |e: &EllipseStats, p: [f64; 2]| e.mahalanobis(p) <= e.k_sigma * slack;
    if inside(b, a.mean) || inside(a, b.mean) {
        return true;
    }
    let pa = a.boundary(BOUNDARY_POINTS);
    let pb = b.boundary(BOUNDARY_POINTS);
    if pa.iter().any(|&p| inside(b, p)) || pb.iter().any(|&p| inside(a, p)) {
        return true;
    }
    polygons_cross(&pa, &pb)
}

fn polygons_cross(pa: &[[f64; 2]], pb: &[[f64; 2]]) -> bool {
    let edges = |p: &[[f64; 2]]| -> Vec<([f64; 2], [f64; 2])> {
        (0..p.len()).map(|i| (p[i], p[(i + 1) % p.len()])).collect()
    };
    let eb = edges(pb);
    edges(pa)
        .iter()
        .any(|&(p, q)| eb.iter().any(|&(r, s)| segments_intersect(p, q, r, s)))
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_intersect(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let (d1, d2) = (orient(r, s, p), orient(r, s, q));
    let (d3, d4) = (orient(p, q, r), orient(p, q, s));
    (d1 * d2 <= 0.0) && (d3 * d4 <= 0.0) && !(d1 == 0.0 && d2 == 0.0 && d3 == 0.0 && d4 == 0.0)
}

/// Simulated cloud and fitted ellipse for one panel braid.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidCloud {
    pub samples: Vec<Complex64>,
    pub ellipse: EllipseStats,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelRow {
    pub braid: String,
    pub knot_class: String,
    pub exact_re: f64,
    pub exact_im: f64,
    pub seed: u64,
    pub ellipse: EllipseStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminationReport {
    pub selection_rule: String,
    pub classes: Vec<KnotClass>,
    pub panel: Vec<PanelRow>,
    pub distinct_pairs_total: usize,
    pub distinct_pairs_separated: usize,
    pub identical_pairs_total: usize,
    pub identical_pairs_overlapping: usize,
    pub passive_errors: usize,
    pub fatal_errors: usize,
    pub success_rate: f64,
    /// Set when there were no distinct pairs and that fraction was taken as 1.
    pub distinct_fraction_by_convention: bool,
    /// Set when there were no identical pairs and that fraction was taken as 1.
    pub identical_fraction_by_convention: bool,
    pub nmr_reference_rate: f64,
    pub epsilon: f64,
    pub repeats: usize,
    pub k_sigma: f64,
    pub noise: NoiseModel,
    pub ellipses_fitted_to: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationRun {
    pub report: DiscriminationReport,
    pub clouds: Vec<BraidCloud>,
}

/// Seed for panel entry `index`, derived from the run seed.
pub fn entry_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 finaliser
    let mut z = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Pair tallies from a set of ellipses with class labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub distinct_total: usize,
    pub distinct_separated: usize,
    pub identical_total: usize,
    pub identical_overlapping: usize,
}

impl PairCounts {
    pub fn tally(labels: &[usize], ellipses: &[EllipseStats]) -> Self {
        let mut c = Self::default();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                let overlap = ellipses_overlap(&ellipses[i], &ellipses[j]);
                if labels[i] == labels[j] {
                    c.identical_total += 1;
                    c.identical_overlapping += usize::from(overlap);
                } else {
                    c.distinct_total += 1;
                    c.distinct_separated += usize::from(!overlap);
                }
            }
        }
        c
    }

    /// `½(separated/distinct + overlapping/identical)`, with an empty
    /// denominator counting as 1. Returns the rate and the two convention flags.
    pub fn success_rate(&self) -> (f64, bool, bool) {
        let frac = |num: usize, den: usize| {
            if den == 0 {
                (1.0, true)
            } else {
                (num as f64 / den as f64, false)
            }
        };
        let (d, d_conv) = frac(self.distinct_separated, self.distinct_total);
        let (s, s_conv) = frac(self.identical_overlapping, self.identical_total);
        (0.5 * (d + s), d_conv, s_conv)
    }
}

/// Simulates every panel braid, fits `2σ` ellipses and scores all pairs.
pub fn run_discrimination(
    panel: &Panel,
    epsilon: f64,
    noise: &NoiseModel,
    repeats: usize,
) -> Result<DiscriminationRun> {
    run_discrimination_with(panel, epsilon, noise, repeats, DEFAULT_K_SIGMA)
}

pub fn run_discrimination_with(
    panel: &Panel,
    epsilon: f64,
    noise: &NoiseModel,
    repeats: usize,
    k_sigma: f64,
) -> Result<DiscriminationRun> {
    if repeats < 3 {
        return Err(Error::InsufficientData {
            samples: repeats,
            needed: 3,
        });
    }
    let clouds: Vec<BraidCloud> = panel
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let seed = entry_seed(noise.seed, i);
            let model = NoiseModel { seed, ..*noise };
            let samples: Vec<Complex64> = eval_dqc1(&e.braid, epsilon, Some(&model), repeats)?
                .into_iter()
                .map(|r| r.value)
                .collect();
            let ellipse = ellipse_fit(&samples, k_sigma)?;
            Ok(BraidCloud {
                samples,
                ellipse,
                seed,
            })
        })
        .collect::<Result<_>>()?;

    let labels: Vec<usize> = panel.entries.iter().map(|e| e.class).collect();
    let ellipses: Vec<EllipseStats> = clouds.iter().map(|c| c.ellipse).collect();
    let counts = PairCounts::tally(&labels, &ellipses);
    let (success_rate, d_conv, s_conv) = counts.success_rate();

    let rows = panel
        .entries
        .iter()
        .zip(&clouds)
        .map(|(e, c)| PanelRow {
            braid: e.braid.render(),
            knot_class: panel.label(e).to_string(),
            exact_re: e.exact.re,
            exact_im: e.exact.im,
            seed: c.seed,
            ellipse: c.ellipse,
        })
        .collect();

    let report = DiscriminationReport {
        selection_rule: panel.selection_rule(),
        classes: panel.classes.clone(),
        panel: rows,
        distinct_pairs_total: counts.distinct_total,
        distinct_pairs_separated: counts.distinct_separated,
        identical_pairs_total: counts.identical_total,
        identical_pairs_overlapping: counts.identical_overlapping,
        passive_errors: counts.distinct_total - counts.distinct_separated,
        fatal_errors: counts.identical_total - counts.identical_overlapping,
        success_rate,
        distinct_fraction_by_convention: d_conv,
        identical_fraction_by_convention: s_conv,
        nmr_reference_rate: NMR_REFERENCE_RATE,
        epsilon,
        repeats,
        k_sigma,
        noise: *noise,
        ellipses_fitted_to: "simulated clouds",
    };
    Ok(DiscriminationRun { report, clouds })
}

impl DiscriminationRun {
    /// Columns `knot_class, braid, re_v, im_v`.
    pub fn write_clouds_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["knot_class", "braid", "re_v", "im_v"])
            .map_err(csv_err)?;
        for (row, cloud) in self.report.panel.iter().zip(&self.clouds) {
            for v in &cloud.samples {
                w.write_record([
                    row.knot_class.as_str(),
                    row.braid.as_str(),
                    &v.re.to_string(),
                    &v.im.to_string(),
                ])
                .map_err(csv_err)?;
            }
        }
        w.flush()
            .map_err(|e| Error::Domain(format!("csv output: {e}")))
    }

    /// Columns `knot_class, braid, mean_re, mean_im, cov_xx, cov_xy, cov_yy, k_sigma`.
    pub fn write_ellipses_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "knot_class",
            "braid",
            "mean_re",
            "mean_im",
            "cov_xx",
            "cov_xy",
            "cov_yy",
            "k_sigma",
        ])
        .map_err(csv_err)?;
        for row in &self.report.panel {
            let e = &row.ellipse;
            w.write_record([
                row.knot_class.clone(),
                row.braid.clone(),
                e.mean[0].to_string(),
                e.mean[1].to_string(),
                e.covariance[0][0].to_string(),
                e.covariance[0][1].to_string(),
                e.covariance[1][1].to_string(),
                e.k_sigma.to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()
            .map_err(|e| Error::Domain(format!("csv output: {e}")))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Domain(format!("csv output: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(cx: f64, cy: f64, radius: f64) -> EllipseStats {
        let var = (radius / 2.0).powi(2);
        EllipseStats {
            mean: [cx, cy],
            covariance: [[var, 0.0], [0.0, var]],
            k_sigma: 2.0,
        }
    }

    #[test]
    fn confidence_at_two_sigma() {
        let e = circle(0.0, 0.0, 1.0);
        assert!((e.confidence() - (1.0 - (-2.0f64).exp())).abs() < 1e-15);
        assert!((e.confidence() - 0.865).abs() < 1e-3);
    }

    #[test]
    fn fit_identical_samples() {
        let s = vec![Complex64::new(1.5, -0.5); 10];
        let e = ellipse_fit(&s, 2.0).unwrap();
        assert_eq!(e.mean, [1.5, -0.5]);
        assert_eq!(e.covariance, [[0.0, 0.0], [0.0, 0.0]]);
        let floor = SIGMA_MIN * SIGMA_MIN;
        assert_eq!(e.shape(), [[floor, 0.0], [0.0, floor]]);
        assert!((e.mahalanobis([1.5 + 2e-6, -0.5]) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn fit_symmetric_circle() {
        // 8 points on the unit circle: Σcos² = 4, so unbiased variance 4/7
        let s: Vec<Complex64> = (0..8)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 8.0))
            .collect();
        let e = ellipse_fit(&s, 2.0).unwrap();
        assert!(e.mean[0].abs() < 1e-15 && e.mean[1].abs() < 1e-15);
        assert!((e.covariance[0][0] - 4.0 / 7.0).abs() < 1e-12);
        assert!((e.covariance[1][1] - 4.0 / 7.0).abs() < 1e-12);
        assert!(e.covariance[0][1].abs() < 1e-12);
        assert_eq!(e.covariance[0][1], e.covariance[1][0]);

        // large symmetric sample: population moments ½I
        let n = 4000;
        let s: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
            .collect();
        let e = ellipse_fit(&s, 2.0).unwrap();
        assert!((e.covariance[0][0] - 0.5).abs() < 1e-3);
        assert!((e.covariance[1][1] - 0.5).abs() < 1e-3);
    }

    #[test]
    fn fit_needs_three_samples() {
        let s = vec![Complex64::new(0.0, 0.0); 2];
        assert_eq!(
            ellipse_fit(&s, 2.0),
            Err(Error::InsufficientData {
                samples: 2,
                needed: 3
            })
        );
    }

    #[test]
    fn overlap_cases() {
        assert!(ellipses_overlap(
            &circle(0.0, 0.0, 1.0),
            &circle(0.0, 0.0, 3.0)
        ));
        assert!(ellipses_overlap(
            &circle(0.0, 0.0, 3.0),
            &circle(0.5, 0.0, 1.0)
        ));
        assert!(!ellipses_overlap(
            &circle(0.0, 0.0, 1.0),
            &circle(10.0, 0.0, 1.0)
        ));
        assert!(ellipses_overlap(
            &circle(0.0, 0.0, 1.0),
            &circle(1.5, 0.0, 1.0)
        ));
        assert!(!ellipses_overlap(
            &circle(0.0, 0.0, 1.0),
            &circle(2.01, 0.0, 1.0)
        ));
    }

    #[test]
    fn tangent_counts_as_overlap() {
        // tangency along a direction that is not a sample angle
        for angle in [0.0, 0.3, 1.234, 2.0] {
            let (dx, dy) = (2.0 * f64::cos(angle), 2.0 * f64::sin(angle));
            assert!(
                ellipses_overlap(&circle(0.0, 0.0, 1.0), &circle(dx, dy, 1.0)),
                "{angle}"
            );
        }
    }

    #[test]
    fn crossing_thin_ellipses_overlap() {
        // an X of two needles: no centre or sampled boundary point of one
        // lies inside the other
        let a = EllipseStats {
            mean: [0.0, 0.0],
            covariance: [[1.0, 0.0], [0.0, 1e-10]],
            k_sigma: 2.0,
        };
        let b = EllipseStats {
            mean: [1.0, 0.5],
            covariance: [[1e-10, 0.0], [0.0, 1.0]],
            k_sigma: 2.0,
        };
        assert!(ellipses_overlap(&a, &b));
    }

    #[test]
    fn pair_counts_for_panel_shape() {
        // 6 classes × 3 reps
        let labels: Vec<usize> = (0..6).flat_map(|k| [k; 3]).collect();
        let ellipses: Vec<EllipseStats> = labels
            .iter()
            .map(|&k| circle(10.0 * k as f64, 0.0, 1.0))
            .collect();
        let c = PairCounts::tally(&labels, &ellipses);
        assert_eq!(c.identical_total, 18);
        assert_eq!(c.distinct_total, 135);
        assert_eq!(c.success_rate().0, 1.0);
    }

    #[test]
    fn success_rate_from_published_counts() {
        let c = PairCounts {
            distinct_total: 135,
            distinct_separated: 134,
            identical_total: 18,
            identical_overlapping: 15,
        };
        let (rate, d, s) = c.success_rate();
        assert!((rate - 0.913).abs() < 1e-3);
        assert_eq!(rate, NMR_REFERENCE_RATE);
        assert!(!d && !s);
    }

    #[test]
    fn single_class_convention() {
        let labels = vec![0, 0, 0];
        let ellipses = vec![circle(0.0, 0.0, 1.0); 3];
        let c = PairCounts::tally(&labels, &ellipses);
        assert_eq!(c.distinct_total, 0);
        let (rate, d_conv, s_conv) = c.success_rate();
        assert_eq!(rate, 1.0);
        assert!(d_conv && !s_conv);
    }

    #[test]
    fn entry_seeds_differ() {
        let seeds: Vec<u64> = (0..18).map(|i| entry_seed(7, i)).collect();
        let mut uniq = seeds.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 18);
    }
}
