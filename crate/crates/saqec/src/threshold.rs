//! Capacity-threshold computation: the noise parameter where a capacity
//! functional of Φ(λ) reaches zero, plus sweep curves.
//!
//! Some family/functional pairs only touch zero instead of crossing sign
//! (dephasing coherent information at p = 1/2, depolarizing mutual
//! information at p = 3/4). Values inside a small zero band (5e-9, just
//! above optimizer noise) count as non-positive for bracketing, and a
//! `boundary_touch` flag marks brackets whose high end sits in the band
//! rather than strictly below zero.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{build_family, ChannelFamily};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::information::{maximize_capacity, CapacityFunctional, OptimizerConfig};
use crate::numerics::DensityMatrix;

/// Capacity functional used for thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdFunctional {
    Coherent1letter,
    MutualHalf,
}

impl ThresholdFunctional {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "coherent_1letter" | "coherent" => Ok(ThresholdFunctional::Coherent1letter),
            "mutual_half" | "mutual" => Ok(ThresholdFunctional::MutualHalf),
            other => Err(Error::UnknownCode(format!("functional '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ThresholdFunctional::Coherent1letter => "coherent_1letter",
            ThresholdFunctional::MutualHalf => "mutual_half",
        }
    }

    fn capacity_functional(&self) -> CapacityFunctional {
        match self {
            ThresholdFunctional::Coherent1letter => CapacityFunctional::Coherent,
            ThresholdFunctional::MutualHalf => CapacityFunctional::Mutual,
        }
    }
}

/// Width of the band around zero treated as "zero" during bracketing.
pub const ZERO_BAND: f64 = 5e-9;

/// Bisection result.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdResult {
    pub family: ChannelFamily,
    pub functional: ThresholdFunctional,
    pub lambda_star: f64,
    pub bracket: (f64, f64),
    pub evaluations: usize,
    pub tolerance: f64,
    /// High bracket end was inside the zero band (touching zero) rather
    /// than strictly negative.
    pub boundary_touch: bool,
    /// Every capacity evaluation reported convergence.
    pub all_converged: bool,
}

struct Evaluator<'a> {
    family: ChannelFamily,
    functional: ThresholdFunctional,
    opt: OptimizerConfig,
    cfg: &'a Config,
    evaluations: usize,
    all_converged: bool,
    warm: Option<DensityMatrix>,
}

impl<'a> Evaluator<'a> {
    fn eval(&mut self, lambda: f64) -> Result<f64> {
        let channel = build_family(self.family, lambda, self.cfg)?;
        // Warm-start with the previous maximizer: bisection moves λ a
        // little, so the optimum barely moves.
        let opt = OptimizerConfig {
            warm_start: self.warm.clone(),
            ..self.opt.clone()
        };
        let est = maximize_capacity(
            &channel,
            self.functional.capacity_functional(),
            1,
            &opt,
            self.cfg,
        )?;
        self.evaluations += 1;
        self.all_converged &= est.converged;
        self.warm = Some(est.maximizer);
        Ok(est.value)
    }
}

/// Find the zero of the chosen capacity functional inside `bracket` by
/// bisection. The functional must be positive at the low end and
/// non-positive (negative or inside the zero band) at the high end.
pub fn find_threshold(
    family: ChannelFamily,
    functional: ThresholdFunctional,
    bracket: (f64, f64),
    tol: f64,
    opt: &OptimizerConfig,
    cfg: &Config,
) -> Result<ThresholdResult> {
    let (mut lo, mut hi) = bracket;
    if lo >= hi {
        return Err(Error::OutOfDomain {
            family: family.name(),
            value: hi,
            lo,
            hi,
        });
    }
    let mut ev = Evaluator {
        family,
        functional,
        opt: opt.clone(),
        cfg,
        evaluations: 0,
        all_converged: true,
        warm: None,
    };
    let f_lo = ev.eval(lo)?;
    let f_hi = ev.eval(hi)?;
    if f_lo <= ZERO_BAND {
        return Err(Error::SameSignBracket {
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    if f_hi > ZERO_BAND {
        return Err(Error::SameSignBracket {
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    let boundary_touch = f_hi.abs() <= ZERO_BAND;

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = ev.eval(mid)?;
        if f_mid > ZERO_BAND {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    Ok(ThresholdResult {
        family,
        functional,
        lambda_star: 0.5 * (lo + hi),
        bracket,
        evaluations: ev.evaluations,
        tolerance: tol,
        boundary_touch,
        all_converged: ev.all_converged,
    })
}

/// Default bisection brackets with a sign change (or boundary touch) for
/// each family/functional pair. Dephasing mutual information has no zero on
/// [0, 1] and is deliberately absent.
pub fn default_bracket(
    family: ChannelFamily,
    functional: ThresholdFunctional,
) -> Option<(f64, f64)> {
    use ChannelFamily::*;
    use ThresholdFunctional::*;
    match (family, functional) {
        (Depolarizing, Coherent1letter) => Some((0.0, 0.5)),
        (Depolarizing, MutualHalf) => Some((0.0, 0.75)),
        (Dephasing, Coherent1letter) => Some((0.0, 0.5)),
        (Dephasing, MutualHalf) => None,
        (AmplitudeDamping, Coherent1letter) => Some((0.0, 0.95)),
        (AmplitudeDamping, MutualHalf) => Some((0.0, 1.0)),
        (Erasure, Coherent1letter) => Some((0.0, 0.95)),
        (Erasure, MutualHalf) => Some((0.0, 1.0)),
    }
}

/// One sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub lambda: f64,
    pub value: f64,
    pub converged: bool,
}

/// Evaluate the functional across a grid (points run concurrently, output
/// in grid order).
pub fn sweep(
    family: ChannelFamily,
    functional: ThresholdFunctional,
    grid: &[f64],
    opt: &OptimizerConfig,
    cfg: &Config,
) -> Result<Vec<SweepPoint>> {
    grid.par_iter()
        .map(|&lambda| {
            let channel = build_family(family, lambda, cfg)?;
            let est = maximize_capacity(
                &channel,
                functional.capacity_functional(),
                1,
                opt,
                cfg,
            )?;
            Ok(SweepPoint {
                lambda,
                value: est.value,
                converged: est.converged,
            })
        })
        .collect()
}

/// CSV rows for a sweep: family, functional, lambda, value, converged.
pub fn sweep_csv(
    family: ChannelFamily,
    functional: ThresholdFunctional,
    points: &[SweepPoint],
) -> String {
    let mut out = String::from("family,functional,lambda,value,converged\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            family.name(),
            functional.name(),
            crate::fmt_sig(p.lambda),
            crate::fmt_sig(p.value),
            p.converged
        ));
    }
    out
}

/// Evenly spaced grid including both endpoints.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2);
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::information::binary_entropy;

    fn cfg() -> Config {
        Config::default()
    }

    /// Independent oracle: bisection of the closed form
    /// 1 - h(p) - p·log₂3 for the depolarizing hashing threshold.
    fn depolarizing_coherent_root() -> f64 {
        let f = |p: f64| 1.0 - binary_entropy(p) - p * 3f64.log2();
        let (mut lo, mut hi) = (0.1, 0.3);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn oracle_root_matches_known_value() {
        let root = depolarizing_coherent_root();
        assert!((root - 0.18929).abs() < 1e-4, "root {root}");
    }

    #[test]
    fn dephasing_coherent_threshold_is_half() {
        let cfg = cfg();
        let opt = OptimizerConfig::default();
        let res = find_threshold(
            ChannelFamily::Dephasing,
            ThresholdFunctional::Coherent1letter,
            default_bracket(ChannelFamily::Dephasing, ThresholdFunctional::Coherent1letter)
                .unwrap(),
            1e-5,
            &opt,
            &cfg,
        )
        .unwrap();
        assert!((res.lambda_star - 0.5).abs() < 1e-4, "{}", res.lambda_star);
        assert!(res.boundary_touch);
    }

    #[test]
    fn depolarizing_thresholds() {
        let cfg = cfg();
        let opt = OptimizerConfig::default();
        let coherent = find_threshold(
            ChannelFamily::Depolarizing,
            ThresholdFunctional::Coherent1letter,
            (0.0, 0.5),
            1e-5,
            &opt,
            &cfg,
        )
        .unwrap();
        let oracle = depolarizing_coherent_root();
        assert!(
            (coherent.lambda_star - oracle).abs() < 5e-4,
            "got {} oracle {oracle}",
            coherent.lambda_star
        );
        assert!(!coherent.boundary_touch);

        let mutual = find_threshold(
            ChannelFamily::Depolarizing,
            ThresholdFunctional::MutualHalf,
            (0.0, 0.75),
            1e-5,
            &opt,
            &cfg,
        )
        .unwrap();
        assert!((mutual.lambda_star - 0.75).abs() < 1e-4, "{}", mutual.lambda_star);
        // Dominance.
        assert!(mutual.lambda_star >= coherent.lambda_star - 1e-4);
    }

    #[test]
    fn dephasing_mutual_has_no_zero() {
        let cfg = cfg();
        let opt = OptimizerConfig::default();
        let err = find_threshold(
            ChannelFamily::Dephasing,
            ThresholdFunctional::MutualHalf,
            (0.0, 1.0),
            1e-5,
            &opt,
            &cfg,
        );
        assert!(matches!(err, Err(Error::SameSignBracket { .. })));
    }

    #[test]
    fn sweep_dephasing_closed_form() {
        let cfg = cfg();
        let opt = OptimizerConfig::default();
        let grid = [0.0, 0.25, 0.5];
        let points = sweep(
            ChannelFamily::Dephasing,
            ThresholdFunctional::Coherent1letter,
            &grid,
            &opt,
            &cfg,
        )
        .unwrap();
        for (p, point) in grid.iter().zip(&points) {
            let expected = 1.0 - binary_entropy(*p);
            assert!((point.value - expected).abs() < 1e-4, "p={p}");
        }
        let csv = sweep_csv(
            ChannelFamily::Dephasing,
            ThresholdFunctional::Coherent1letter,
            &points,
        );
        assert!(csv.starts_with("family,functional,lambda,value,converged\n"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn noiseless_point_has_unit_capacity() {
        let cfg = cfg();
        let opt = OptimizerConfig::default();
        for functional in [
            ThresholdFunctional::Coherent1letter,
            ThresholdFunctional::MutualHalf,
        ] {
            let points = sweep(ChannelFamily::Depolarizing, functional, &[0.0], &opt, &cfg).unwrap();
            assert!((points[0].value - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn mutual_half_dominates_coherent_pointwise() {
        let cfg = cfg();
        let opt = OptimizerConfig::default();
        let grid = linspace(0.0, 0.4, 5);
        let coherent = sweep(
            ChannelFamily::Depolarizing,
            ThresholdFunctional::Coherent1letter,
            &grid,
            &opt,
            &cfg,
        )
        .unwrap();
        let mutual = sweep(
            ChannelFamily::Depolarizing,
            ThresholdFunctional::MutualHalf,
            &grid,
            &opt,
            &cfg,
        )
        .unwrap();
        for (c, m) in coherent.iter().zip(&mutual) {
            assert!(m.value >= c.value - 1e-5, "at λ={}", c.lambda);
        }
    }
}
