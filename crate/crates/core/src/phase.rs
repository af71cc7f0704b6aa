//! Critical couplings and phase-diagram sweeps.
//!
//! With the two-photon coefficient tied to the coupling, `D = κγΩ²/ω_J`, the
//! lower normal mode softens at
//!
//! ```text
//! Ω₀ = ½ √(ω_r ω_J / (1 − κγ))
//! ```
//!
//! and never softens when `κγ ≥ 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{require_finite, require_non_negative, require_positive, Error, Result};
use crate::quadratic::{closed_form_pair, Phase, TwoModeQuadratic};

/// Doublings of the upper bracket allowed before giving up.
pub const MAX_BRACKET_DOUBLINGS: usize = 60;
/// Bisection stops once the bracket is narrower than this times ω_r.
pub const BISECTION_TOLERANCE: f64 = 1e-13;

fn require_frequencies(omega_r: f64, omega_j: f64) -> Result<()> {
    require_positive("omega_r", omega_r)?;
    require_positive("omega_j", omega_j)
}

/// `Ω₀ = ½√(ω_r ω_J / (1 − κγ))` when `κγ < 1`.
pub fn critical_coupling(kappa: f64, gamma: f64, omega_r: f64, omega_j: f64) -> Option<f64> {
    let kg = kappa * gamma;
    (kg < 1.0).then(|| 0.5 * (omega_r * omega_j / (1.0 - kg)).sqrt())
}

/// ω_−² of the tied model at coupling Ω.
pub fn tied_omega_minus_sq(kappa_gamma: f64, omega_r: f64, omega_j: f64, omega_big: f64) -> f64 {
    closed_form_pair(&TwoModeQuadratic::tied(omega_r, omega_j, omega_big, kappa_gamma)).1
}

/// Bisection for the zero of Ω ↦ ω_−²(Ω) in the tied model.
///
/// The upper end starts at ω_r and doubles until ω_−² turns negative; `None`
/// when no sign change appears within [`MAX_BRACKET_DOUBLINGS`] and `κγ ≥ 1`.
pub fn critical_coupling_numeric(kappa: f64, gamma: f64, omega_r: f64, omega_j: f64) -> Result<Option<f64>> {
    require_frequencies(omega_r, omega_j)?;
    let kg = kappa * gamma;
    let f = |om: f64| tied_omega_minus_sq(kg, omega_r, omega_j, om);

    let mut lo = omega_r * f64::EPSILON;
    let mut hi = omega_r;
    let mut doublings = 0;
    while f(hi) >= 0.0 {
        if doublings == MAX_BRACKET_DOUBLINGS {
            if kg < 1.0 {
                return Err(Error::BracketFailure { kappa_gamma: kg, omega_hi: hi });
            }
            return Ok(None);
        }
        lo = hi;
        hi *= 2.0;
        doublings += 1;
    }

    while hi - lo > BISECTION_TOLERANCE * omega_r {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn new(min: f64, max: f64, steps: usize) -> Self {
        Range { min, max, steps }
    }

    pub fn single(value: f64) -> Self {
        Range { min: value, max: value, steps: 1 }
    }

    pub fn validate(&self, field: &'static str) -> Result<()> {
        require_finite(field, self.min)?;
        require_finite(field, self.max)?;
        if self.steps == 0 {
            return Err(Error::validation(field, "steps must be at least 1"));
        }
        if self.steps > 1 && self.max <= self.min {
            return Err(Error::validation(field, "max must exceed min when steps > 1"));
        }
        Ok(())
    }

    /// Evenly spaced values including both ends; just `min` when `steps == 1`.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + (self.max - self.min) * i as f64 / last })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Classify by the sign of ω_−² at each Ω.
    FixedOmega,
    /// Thermodynamic limit: superradiant iff κγ < 1, Ω ignored.
    InfiniteN,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OmegaAxis {
    Fixed(f64),
    Range(Range),
}

impl OmegaAxis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            OmegaAxis::Fixed(v) => vec![*v],
            OmegaAxis::Range(r) => r.values(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSpec {
    pub kappa: Range,
    pub gamma: Range,
    pub omega_big: OmegaAxis,
    pub omega_r: f64,
    pub omega_j: f64,
    pub mode: SweepMode,
    /// Fixed two-photon coefficient replacing the tied `κγΩ²/ω_J`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub untied_d: Option<f64>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            kappa: Range::new(0.0, 1.0, 21),
            gamma: Range::new(0.0, 2.0, 21),
            omega_big: OmegaAxis::Fixed(1.0),
            omega_r: 1.0,
            omega_j: 1.0,
            mode: SweepMode::InfiniteN,
            untied_d: None,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.kappa.validate("kappa")?;
        self.gamma.validate("gamma")?;
        match &self.omega_big {
            OmegaAxis::Fixed(v) => require_finite("omega_big", *v)?,
            OmegaAxis::Range(r) => r.validate("omega_big")?,
        }
        require_frequencies(self.omega_r, self.omega_j)?;
        if let Some(d) = self.untied_d {
            require_non_negative("untied_d", d)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.kappa.steps * self.gamma.steps * self.omega_big.values().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointPhase {
    Normal,
    Critical,
    Superradiant,
    /// No superradiant phase at any coupling (κγ ≥ 1 in the thermodynamic limit).
    Forbidden,
}

impl From<Phase> for PointPhase {
    fn from(p: Phase) -> Self {
        match p {
            Phase::Normal => PointPhase::Normal,
            Phase::Critical => PointPhase::Critical,
            Phase::Superradiant => PointPhase::Superradiant,
        }
    }
}

impl PointPhase {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointPhase::Normal => "normal",
            PointPhase::Critical => "critical",
            PointPhase::Superradiant => "superradiant",
            PointPhase::Forbidden => "forbidden",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhasePoint {
    pub kappa: f64,
    pub gamma: f64,
    pub omega_big: f64,
    /// Absent in [`SweepMode::InfiniteN`].
    pub omega_minus_sq: Option<f64>,
    pub phase: PointPhase,
    /// Present iff κγ < 1.
    pub omega_critical: Option<f64>,
}

/// Classifies one grid point.
pub fn classify_point(spec: &SweepSpec, kappa: f64, gamma: f64, omega_big: f64) -> PhasePoint {
    let kg = kappa * gamma;
    let omega_critical = critical_coupling(kappa, gamma, spec.omega_r, spec.omega_j);
    let (omega_minus_sq, phase) = match spec.mode {
        SweepMode::InfiniteN => (None, if kg < 1.0 { PointPhase::Superradiant } else { PointPhase::Forbidden }),
        SweepMode::FixedOmega => {
            let d_coef = spec.untied_d.unwrap_or(kg * omega_big * omega_big / spec.omega_j);
            let h = TwoModeQuadratic::new(spec.omega_r, spec.omega_j, omega_big, d_coef, 0.0);
            let minus = closed_form_pair(&h).1;
            (Some(minus), Phase::classify(minus).into())
        }
    };
    PhasePoint { kappa, gamma, omega_big, omega_minus_sq, phase, omega_critical }
}

/// Every grid point of `spec`, row-major over κ, then γ, then Ω.
pub fn sweep(spec: &SweepSpec, jobs: Option<usize>) -> Result<Vec<PhasePoint>> {
    spec.validate()?;
    let omegas = spec.omega_big.values();
    let mut grid = Vec::with_capacity(spec.len());
    for k in spec.kappa.values() {
        for g in spec.gamma.values() {
            for &w in &omegas {
                grid.push((k, g, w));
            }
        }
    }
    let run = || grid.par_iter().map(|&(k, g, w)| classify_point(spec, k, g, w)).collect();
    Ok(match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::validation("jobs", e.to_string()))?
            .install(run),
        None => run(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(kappa: Range, gamma: Range, omega: OmegaAxis, mode: SweepMode) -> SweepSpec {
        SweepSpec { kappa, gamma, omega_big: omega, omega_r: 1.0, omega_j: 1.0, mode, untied_d: None }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(critical_coupling(0.0, 1.0, 1.0, 1.0), Some(0.5));
        assert_eq!(critical_coupling(0.4, 10.0, 1.0, 1.0), None);
        assert!((critical_coupling(0.75, 1.0, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(critical_coupling(1.0, 1.0, 1.0, 1.0), None);
    }

    #[test]
    fn bisection_matches_closed_form() {
        for (k, g, wr, wj) in [(0.0, 1.0, 1.0, 1.0), (0.0, 3.0, 2.0, 0.5), (0.999, 1.0, 1.0, 1.0), (0.3, 2.5, 1.0, 1.7)] {
            let exact = critical_coupling(k, g, wr, wj).unwrap();
            let num = critical_coupling_numeric(k, g, wr, wj).unwrap().unwrap();
            assert!((num - exact).abs() <= 1e-10 * exact, "κ={k} γ={g}: {num} vs {exact}");
        }
    }

    #[test]
    fn bisection_absent_at_and_beyond_one() {
        assert_eq!(critical_coupling_numeric(1.0, 1.0, 1.0, 1.0).unwrap(), None);
        assert_eq!(critical_coupling_numeric(0.4, 10.0, 1.0, 1.0).unwrap(), None);
        assert!(critical_coupling_numeric(0.1, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn range_values() {
        assert_eq!(Range::single(0.3).values(), vec![0.3]);
        assert_eq!(Range::new(0.0, 1.0, 5).values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(Range::new(1.0, 1.0, 3).validate("kappa").is_err());
        assert!(matches!(Range::new(0.0, 1.0, 0).validate("gamma"), Err(Error::Validation { field: "gamma", .. })));
    }

    #[test]
    fn strong_charging_regime_stays_normal() {
        for om in [0.1, 1.0, 10.0, 1e4] {
            let s = spec(Range::single(0.4), Range::single(10.0), OmegaAxis::Fixed(om), SweepMode::FixedOmega);
            let p = sweep(&s, None).unwrap();
            assert_eq!(p.len(), 1);
            assert_eq!(p[0].phase, PointPhase::Normal);
            assert_eq!(p[0].omega_critical, None);
        }
    }

    #[test]
    fn weak_charging_regime_goes_superradiant() {
        let omega0 = critical_coupling(0.01, 1.0, 1.0, 1.0).unwrap();
        let s = spec(Range::single(0.01), Range::single(1.0), OmegaAxis::Fixed(1.2 * omega0), SweepMode::FixedOmega);
        assert_eq!(sweep(&s, None).unwrap()[0].phase, PointPhase::Superradiant);
    }

    #[test]
    fn infinite_n_boundary_is_the_hyperbola() {
        let s = spec(Range::new(0.0, 2.0, 41), Range::single(1.0), OmegaAxis::Fixed(0.3), SweepMode::InfiniteN);
        for p in sweep(&s, None).unwrap() {
            let expect = if p.kappa * p.gamma < 1.0 { PointPhase::Superradiant } else { PointPhase::Forbidden };
            assert_eq!(p.phase, expect, "κ = {}", p.kappa);
            assert_eq!(p.omega_minus_sq, None);
            assert_eq!(p.omega_critical.is_some(), p.kappa * p.gamma < 1.0);
        }
    }

    #[test]
    fn order_is_row_major() {
        let s = spec(Range::new(0.0, 0.5, 2), Range::new(1.0, 2.0, 3), OmegaAxis::Range(Range::new(0.1, 0.2, 2)), SweepMode::FixedOmega);
        let p = sweep(&s, Some(4)).unwrap();
        assert_eq!(p.len(), 12);
        assert_eq!((p[0].kappa, p[0].gamma, p[0].omega_big), (0.0, 1.0, 0.1));
        assert_eq!((p[1].kappa, p[1].gamma, p[1].omega_big), (0.0, 1.0, 0.2));
        assert_eq!((p[2].kappa, p[2].gamma, p[2].omega_big), (0.0, 1.5, 0.1));
        assert_eq!((p[6].kappa, p[6].gamma, p[6].omega_big), (0.5, 1.0, 0.1));
        assert_eq!(p, sweep(&s, Some(1)).unwrap());
    }

    #[test]
    fn untied_d_can_be_unstable_beyond_one() {
        // a fixed small D does not protect against softening
        let mut s = spec(Range::single(2.0), Range::single(1.0), OmegaAxis::Fixed(3.0), SweepMode::FixedOmega);
        assert_eq!(sweep(&s, None).unwrap()[0].phase, PointPhase::Normal);
        s.untied_d = Some(0.0);
        assert_eq!(sweep(&s, None).unwrap()[0].phase, PointPhase::Superradiant);
    }

    proptest! {
        #[test]
        fn numeric_and_closed_form_agree(kappa in 0.0f64..3.0, gamma in 0.0f64..3.0, wr in 0.2f64..5.0, wj in 0.2f64..5.0) {
            let exact = critical_coupling(kappa, gamma, wr, wj);
            let num = critical_coupling_numeric(kappa, gamma, wr, wj).unwrap();
            match (exact, num) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-10 * a),
                (None, None) => {}
                other => prop_assert!(false, "mismatch {:?}", other),
            }
        }

        #[test]
        fn boundary_consistency(kappa in 0.0f64..1.0, gamma in 0.0f64..1.0, om in 0.01f64..5.0) {
            let s = spec(Range::single(kappa), Range::single(gamma), OmegaAxis::Fixed(om), SweepMode::FixedOmega);
            let p = sweep(&s, None).unwrap()[0];
            let omega0 = p.omega_critical.unwrap();
            match p.phase {
                PointPhase::Superradiant => prop_assert!(om > omega0),
                PointPhase::Normal => prop_assert!(om < omega0),
                PointPhase::Critical => prop_assert!((om - omega0).abs() < 1e-6 * omega0),
                PointPhase::Forbidden => prop_assert!(false),
            }
        }

        #[test]
        fn depends_on_product_only(kappa in 0.0f64..3.0, gamma in 0.01f64..3.0, om in 0.01f64..5.0, infinite in any::<bool>()) {
            let mode = if infinite { SweepMode::InfiniteN } else { SweepMode::FixedOmega };
            let a = sweep(&spec(Range::single(kappa), Range::single(gamma), OmegaAxis::Fixed(om), mode), None).unwrap()[0];
            let b = sweep(&spec(Range::single(kappa * gamma), Range::single(1.0), OmegaAxis::Fixed(om), mode), None).unwrap()[0];
            prop_assert_eq!(a.phase, b.phase);
        }
    }
}
