//! Distribution and correlation analysis: log-binned densities, binned
//! tie-strength vs overlap relations, and the power-law exponent fit.

use crate::error::Error;
use crate::graph::CoauthorGraph;
use crate::metrics::observe_all_edges;
use crate::Result;

/// Which tie-strength variant goes on the x axis of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrengthKind {
    /// Joint paper count w.
    Weight,
    /// Collaboration-discounted w*.
    Discounted,
    /// Asymmetric v (directed; two observations per edge).
    Asymmetric,
}

/// Which overlap goes on the y axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapKind {
    /// Symmetric O.
    Symmetric,
    /// Asymmetric Q (directed).
    Asymmetric,
}

/// Combinations straight out of the correlation analysis; anything else is
/// computable but flagged by the CLI as non-standard.
pub fn relation_is_standard(x: StrengthKind, y: OverlapKind) -> bool {
    matches!(
        (x, y),
        (StrengthKind::Weight, OverlapKind::Symmetric)
            | (StrengthKind::Discounted, OverlapKind::Symmetric)
            | (StrengthKind::Asymmetric, OverlapKind::Asymmetric)
    )
}

/// Logarithmically binned series: per-bin bounds, mean y, sample count and
/// a geometric-mean representative x.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedSeries {
    pub bins: Vec<(f64, f64)>,
    pub y_mean: Vec<f64>,
    pub count: Vec<usize>,
    pub x_rep: Vec<f64>,
}

impl BinnedSeries {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn occupied(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&b| self.count[b] > 0)
    }
}

/// Bin edges at 10^(k / bins_per_decade) covering all samples.
fn log_bins(min: f64, max: f64, bins_per_decade: u32) -> Vec<(f64, f64)> {
    let bpd = bins_per_decade as f64;
    let k0 = (min.log10() * bpd).floor() as i64;
    let mut k1 = (max.log10() * bpd).floor() as i64 + 1;
    // Guard against max sitting exactly on the last edge.
    if 10f64.powf(k1 as f64 / bpd) <= max {
        k1 += 1;
    }
    (k0..k1)
        .map(|k| {
            (
                10f64.powf(k as f64 / bpd),
                10f64.powf((k + 1) as f64 / bpd),
            )
        })
        .collect()
}

fn bin_index(bins: &[(f64, f64)], x: f64) -> usize {
    // Edges are monotone; binary search then clamp for edge rounding.
    let mut idx = bins.partition_point(|&(lo, _)| lo <= x);
    idx = idx.saturating_sub(1);
    if idx + 1 < bins.len() && x >= bins[idx].1 {
        idx += 1;
    }
    idx
}

/// Log-binned probability density of positive values. `y_mean` holds the
/// density estimate count / (bin width * total), so the discrete integral
/// over bins is 1.
pub fn log_binned_distribution(values: &[f64], bins_per_decade: u32) -> Result<BinnedSeries> {
    if values.is_empty() {
        return Err(Error::EmptyInput("no values to bin"));
    }
    if bins_per_decade == 0 {
        return Err(Error::Config("bins_per_decade must be >= 1".into()));
    }
    if values.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::Config("log binning requires positive values".into()));
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(0.0, f64::max);
    let bins = log_bins(min, max, bins_per_decade);

    let mut count = vec![0usize; bins.len()];
    for &v in values {
        count[bin_index(&bins, v)] += 1;
    }
    let total = values.len() as f64;
    let y_mean: Vec<f64> = bins
        .iter()
        .zip(&count)
        .map(|(&(lo, hi), &c)| c as f64 / ((hi - lo) * total))
        .collect();
    let x_rep = bins.iter().map(|&(lo, hi)| (lo * hi).sqrt()).collect();
    Ok(BinnedSeries {
        bins,
        y_mean,
        count,
        x_rep,
    })
}

/// Binned relation between a tie strength (x, log-binned) and an overlap
/// (y, plain per-bin mean). Asymmetric choices contribute one observation
/// per edge direction, symmetric ones a single observation per edge.
pub fn weight_overlap_relation(
    g: &CoauthorGraph,
    x_kind: StrengthKind,
    y_kind: OverlapKind,
    bins_per_decade: u32,
) -> Result<BinnedSeries> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyInput("graph has no edges"));
    }
    let directed = x_kind == StrengthKind::Asymmetric || y_kind == OverlapKind::Asymmetric;
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for obs in observe_all_edges(g) {
        // observe_all_edges yields (i,j) then (j,i); keep only the i<j
        // direction for fully symmetric combinations.
        if !directed && obs.i > obs.j {
            continue;
        }
        xs.push(match x_kind {
            StrengthKind::Weight => obs.weight as f64,
            StrengthKind::Discounted => obs.discounted_weight,
            StrengthKind::Asymmetric => obs.asym_weight,
        });
        ys.push(match y_kind {
            OverlapKind::Symmetric => obs.overlap,
            OverlapKind::Asymmetric => obs.asym_overlap,
        });
    }

    let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = xs.iter().cloned().fold(0.0, f64::max);
    let bins = log_bins(min, max, bins_per_decade);
    let mut count = vec![0usize; bins.len()];
    let mut sums = vec![0.0f64; bins.len()];
    for (&x, &y) in xs.iter().zip(&ys) {
        let b = bin_index(&bins, x);
        count[b] += 1;
        sums[b] += y;
    }
    let y_mean: Vec<f64> = sums
        .iter()
        .zip(&count)
        .map(|(&s, &c)| if c == 0 { 0.0 } else { s / c as f64 })
        .collect();
    let x_rep = bins.iter().map(|&(lo, hi)| (lo * hi).sqrt()).collect();
    Ok(BinnedSeries {
        bins,
        y_mean,
        count,
        x_rep,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    /// Slope of the log-log least-squares line.
    pub beta: f64,
    pub intercept: f64,
    pub r2: f64,
    pub n_points: usize,
}

/// Least-squares line through (log x_rep, log y_mean) over bins with at
/// least `min_count` samples and positive mean.
pub fn fit_power_law_exponent(series: &BinnedSeries, min_count: usize) -> Result<PowerLawFit> {
    let points: Vec<(f64, f64)> = series
        .occupied()
        .filter(|&b| series.count[b] >= min_count && series.y_mean[b] > 0.0)
        .map(|b| (series.x_rep[b].ln(), series.y_mean[b].ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::Config(format!(
            "power-law fit needs >= 3 usable bins, found {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let beta = if denom == 0.0 {
        0.0
    } else {
        (n * sxy - sx * sy) / denom
    };
    let intercept = (sy - beta * sx) / n;

    let mean_y = sy / n;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (intercept + beta * p.0)).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(PowerLawFit {
        beta,
        intercept,
        r2,
        n_points: points.len(),
    })
}

/// True if the sequence of occupied-bin means changes slope sign at least
/// once (the U-shape check).
pub fn is_non_monotonic(series: &BinnedSeries, min_count: usize) -> bool {
    let ys: Vec<f64> = series
        .occupied()
        .filter(|&b| series.count[b] >= min_count)
        .map(|b| series.y_mean[b])
        .collect();
    let mut saw_down = false;
    let mut saw_up = false;
    for w in ys.windows(2) {
        if w[1] > w[0] {
            saw_up = true;
        } else if w[1] < w[0] {
            saw_down = true;
        }
    }
    saw_up && saw_down
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::toy_graph;

    #[test]
    fn decade_binning() {
        let s = log_binned_distribution(&[1.0, 10.0, 100.0], 1).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.count, vec![1, 1, 1]);
    }

    #[test]
    fn single_value_density_integrates_to_one() {
        let s = log_binned_distribution(&[5.0, 5.0, 5.0], 10).unwrap();
        assert_eq!(s.occupied().count(), 1);
        let integral: f64 = s
            .bins
            .iter()
            .zip(&s.y_mean)
            .map(|(&(lo, hi), &d)| d * (hi - lo))
            .sum();
        assert!((integral - 1.0).abs() < 1e-9);
    }

    #[test]
    fn density_integrates_to_one() {
        let values: Vec<f64> = (1..200).map(|v| v as f64).collect();
        let s = log_binned_distribution(&values, 10).unwrap();
        let integral: f64 = s
            .bins
            .iter()
            .zip(&s.y_mean)
            .map(|(&(lo, hi), &d)| d * (hi - lo))
            .sum();
        assert!((integral - 1.0).abs() < 1e-9);
    }

    #[test]
    fn empty_and_invalid_inputs() {
        assert!(log_binned_distribution(&[], 10).is_err());
        assert!(log_binned_distribution(&[1.0, 0.0], 10).is_err());
        assert!(log_binned_distribution(&[1.0], 0).is_err());
    }

    #[test]
    fn relation_observation_counts() {
        let g = toy_graph();
        let sym =
            weight_overlap_relation(&g, StrengthKind::Weight, OverlapKind::Symmetric, 10).unwrap();
        assert_eq!(sym.count.iter().sum::<usize>(), g.edge_count());
        let asym =
            weight_overlap_relation(&g, StrengthKind::Asymmetric, OverlapKind::Asymmetric, 10)
                .unwrap();
        assert_eq!(asym.count.iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn relation_single_bin_mean() {
        // One edge, one observation pair per direction; v values 1 and 2/3,
        // Q values both 0 (isolated dyad).
        let g = crate::graph::CoauthorGraph::build_from_papers(&[
            crate::graph::PaperRecord::new("1", &["a", "b"]),
        ]);
        let s = weight_overlap_relation(&g, StrengthKind::Asymmetric, OverlapKind::Asymmetric, 10)
            .unwrap();
        for b in s.occupied() {
            assert_eq!(s.y_mean[b], 0.0);
        }
    }

    #[test]
    fn standard_combinations() {
        assert!(relation_is_standard(StrengthKind::Weight, OverlapKind::Symmetric));
        assert!(relation_is_standard(StrengthKind::Asymmetric, OverlapKind::Asymmetric));
        assert!(!relation_is_standard(StrengthKind::Asymmetric, OverlapKind::Symmetric));
    }

    fn planted_series(beta: f64, scale: f64) -> BinnedSeries {
        let xs: Vec<f64> = (1..=30).map(|k| scale * 1.3f64.powi(k)).collect();
        let bins: Vec<(f64, f64)> = xs.iter().map(|&x| (x / 1.1, x * 1.1)).collect();
        BinnedSeries {
            x_rep: xs.iter().map(|&x| x).collect(),
            y_mean: xs.iter().map(|&x| x.powf(beta)).collect(),
            count: vec![100; xs.len()],
            bins,
        }
    }

    #[test]
    fn fit_recovers_planted_exponent() {
        let fit = fit_power_law_exponent(&planted_series(0.65, 1.0), 10).unwrap();
        assert!((fit.beta - 0.65).abs() < 1e-9);
        assert!(fit.r2 > 1.0 - 1e-9);
    }

    #[test]
    fn fit_constant_series_is_flat() {
        let mut s = planted_series(0.0, 1.0);
        s.y_mean = vec![2.0; s.len()];
        let fit = fit_power_law_exponent(&s, 10).unwrap();
        assert!(fit.beta.abs() < 1e-12);
    }

    #[test]
    fn fit_needs_three_bins() {
        let mut s = planted_series(0.5, 1.0);
        s.count = vec![1; s.len()];
        assert!(fit_power_law_exponent(&s, 10).is_err());
    }

    #[test]
    fn fit_is_scale_covariant() {
        let a = fit_power_law_exponent(&planted_series(0.65, 1.0), 10).unwrap();
        let b = fit_power_law_exponent(&planted_series(0.65, 10.0), 10).unwrap();
        assert!((a.beta - b.beta).abs() < 1e-9);
    }

    #[test]
    fn binning_scale_covariance() {
        let values: Vec<f64> = (1..100).map(|v| v as f64).collect();
        let scaled: Vec<f64> = values.iter().map(|v| v * 10.0).collect();
        let a = log_binned_distribution(&values, 5).unwrap();
        let b = log_binned_distribution(&scaled, 5).unwrap();
        assert_eq!(a.count, b.count);
    }

    #[test]
    fn non_monotonic_detection() {
        let mut s = planted_series(0.0, 1.0);
        let n = s.len();
        s.y_mean = (0..n)
            .map(|k| ((k as f64) - (n as f64) / 2.0).powi(2) + 1.0)
            .collect();
        assert!(is_non_monotonic(&s, 10));
        s.y_mean = (0..n).map(|k| k as f64 + 1.0).collect();
        assert!(!is_non_monotonic(&s, 10));
    }
}
