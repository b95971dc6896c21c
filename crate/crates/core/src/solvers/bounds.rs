use num::Zero;

use crate::frac::{frac, Frac};

use super::SolverError;

/// Upper bound on τ for planar digraphs of digirth g on n vertices.
pub fn theorem_bound(n: usize, g: usize) -> Result<Frac, SolverError> {
    let n = n as i64;
    match g {
        0..=3 => Err(SolverError::UnsupportedGirth(g.to_string())),
        4 => Ok(frac(5 * n - 5, 9)),
        5 => Ok(frac(2 * n - 5, 4)),
        _ => Ok(frac(2 * n - 6, g as i64)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwRatio {
    pub tau: usize,
    pub tau_star: Frac,
    pub ratio: Frac,
}

impl GwRatio {
    /// The ratio exceeds 3/2.
    pub fn exceeds(&self) -> bool {
        self.ratio > frac(3, 2)
    }
}

/// τ / τ*, undefined when τ* = 0.
pub fn gw_ratio(tau: usize, tau_star: &Frac) -> Result<GwRatio, SolverError> {
    if tau_star.is_zero() {
        return Err(SolverError::Undefined);
    }
    Ok(GwRatio {
        tau,
        tau_star: tau_star.clone(),
        ratio: Frac::from_integer((tau as i64).into()) / tau_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::int;
    use num::One;

    #[test]
    fn theorem_values() {
        assert_eq!(theorem_bound(9, 4).unwrap(), frac(40, 9));
        assert_eq!(theorem_bound(10, 5).unwrap(), frac(15, 4));
        assert_eq!(theorem_bound(12, 6).unwrap(), int(3));
        assert!(matches!(
            theorem_bound(12, 3),
            Err(SolverError::UnsupportedGirth(_))
        ));
    }

    #[test]
    fn ratio_values() {
        let r = gw_ratio(1, &Frac::one()).unwrap();
        assert_eq!(r.ratio, int(1));
        assert!(!r.exceeds());
        assert!(gw_ratio(2, &frac(5, 4)).unwrap().exceeds());
        assert_eq!(gw_ratio(0, &int(0)), Err(SolverError::Undefined));
    }
}
