//! Shared reporting types for evaluated bound expressions.

/// Artifact-wide stand-in for asymptotic `p^{o(1)}` factors: `C * (log p)^a`
/// with natural logarithm. Defaults `C = 1`, `a = 1` reproduce a bare
/// `log p`. Every report records the convention it was evaluated under so
/// different sweeps stay comparable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct O1Convention {
    pub constant: f64,
    pub exponent: f64,
}

impl Default for O1Convention {
    fn default() -> Self {
        Self {
            constant: 1.0,
            exponent: 1.0,
        }
    }
}

impl O1Convention {
    pub fn new(constant: f64, exponent: f64) -> Self {
        Self { constant, exponent }
    }

    /// The surrogate factor `C * (log p)^a` at a given modulus.
    pub fn surrogate(&self, p: u64) -> f64 {
        self.constant * (p as f64).ln().powf(self.exponent)
    }
}

/// Parameters a bound expression was evaluated with.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BoundParams {
    pub ell: Option<u32>,
    pub eps: Option<f64>,
    pub o1: O1Convention,
}

impl BoundParams {
    pub fn with_ell(ell: u32, o1: O1Convention) -> Self {
        Self {
            ell: Some(ell),
            eps: None,
            o1,
        }
    }

    pub fn plain(o1: O1Convention) -> Self {
        Self {
            ell: None,
            eps: None,
            o1,
        }
    }
}

/// An evaluated bound expression: the value, the regime that selected it,
/// applicability flags, and (once the caller attaches it) the exact quantity
/// it is measured against.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound: f64,
    pub regime: &'static str,
    pub flags: Vec<&'static str>,
    pub params: BoundParams,
    pub exact: Option<f64>,
    pub ratio: Option<f64>,
}

impl BoundReport {
    pub fn new(bound: f64, regime: &'static str, params: BoundParams) -> Self {
        Self {
            bound,
            regime,
            flags: Vec::new(),
            params,
            exact: None,
            ratio: None,
        }
    }

    pub fn flag(mut self, flag: &'static str) -> Self {
        self.flags.push(flag);
        self
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|&f| f == flag)
    }

    /// Attaches the exact value; the ratio is `exact / bound` when the bound
    /// is positive.
    pub fn with_exact(mut self, exact: f64) -> Self {
        self.exact = Some(exact);
        self.ratio = (self.bound > 0.0).then(|| exact / self.bound);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_surrogate_is_log_p() {
        let o1 = O1Convention::default();
        assert!((o1.surrogate(101) - (101f64).ln()).abs() < 1e-15);
        let scaled = O1Convention::new(2.0, 0.5);
        assert!((scaled.surrogate(101) - 2.0 * (101f64).ln().sqrt()).abs() < 1e-15);
    }

    #[test]
    fn ratio_tracks_exact_over_bound() {
        let r = BoundReport::new(10.0, "test", BoundParams::default()).with_exact(4.0);
        assert_eq!(r.ratio, Some(0.4));
        let zero = BoundReport::new(0.0, "test", BoundParams::default()).with_exact(4.0);
        assert_eq!(zero.ratio, None);
    }
}
