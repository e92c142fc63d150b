use std::fmt;

use crate::error::{Error, Result};

/// C^k bound on the entropy jump: `(2 dim / k) R`.
pub fn yomdin_defect(r: f64, dim: usize, k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if !(2..=3).contains(&dim) {
        return Err(Error::InvalidArgument(format!(
            "dimension must be 2 or 3, got {dim}"
        )));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "growth rate must be nonnegative, got {r}"
        )));
    }
    Ok(2.0 * dim as f64 / k as f64 * r)
}

/// Entropy lower bound from a snake perturbation at a saddle of period
/// `tau`: `(1/tau) log lambda_eff - eps`. Without `mu` the saddle is
/// taken as area preserving and `lambda_eff = lambda`; otherwise
/// `lambda_eff = min(lambda, 1/mu)`.
pub fn snake_bound(lambda: f64, mu: Option<f64>, tau: u64, eps: f64) -> Result<f64> {
    let bad = || Error::InvalidEigenvalues { lambda, mu };
    if !(lambda > 1.0) || !lambda.is_finite() {
        return Err(bad());
    }
    if let Some(m) = mu {
        if !(m > 0.0 && m < 1.0) {
            return Err(bad());
        }
    }
    if tau < 1 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    if !(eps >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be nonnegative, got {eps}"
        )));
    }
    let eff = match mu {
        Some(m) => lambda.min(1.0 / m),
        None => lambda,
    };
    Ok(eff.ln() / tau as f64 - eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Varies,
    ConstantCinf,
    ConstantCk,
    Undecided,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Varies => "VARIES",
            Verdict::ConstantCinf => "CONSTANT_CINF",
            Verdict::ConstantCk => "CONSTANT_CK",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Every tag that applies to a scenario. A piece that is not responsible
/// for the entropy gives `CONSTANT_CINF` together with either
/// `CONSTANT_CK` (gap above `alpha_k`) or `UNDECIDED`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictSet {
    pub tags: Vec<Verdict>,
    pub gap: f64,
}

impl VerdictSet {
    pub fn contains(&self, v: Verdict) -> bool {
        self.tags.contains(&v)
    }
}

impl fmt::Display for VerdictSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.tags.iter().map(|t| t.tag()).collect();
        f.write_str(&names.join("+"))
    }
}

pub fn variation_verdict(pieces: &[f64], tangency: usize, alpha_k: f64) -> Result<VerdictSet> {
    if pieces.is_empty() {
        return Err(Error::InvalidArgument("no pieces given".into()));
    }
    let Some(&own) = pieces.get(tangency) else {
        return Err(Error::IndexOutOfRange {
            index: tangency,
            order: pieces.len(),
        });
    };
    let max = pieces.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let gap = max - own;
    let tags = if own >= max {
        vec![Verdict::Varies]
    } else if gap > alpha_k {
        vec![Verdict::ConstantCinf, Verdict::ConstantCk]
    } else {
        vec![Verdict::ConstantCinf, Verdict::Undecided]
    };
    Ok(VerdictSet { tags, gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snake_examples() {
        assert_eq!(snake_bound(3.0, None, 1, 0.0).unwrap(), 3f64.ln());
        assert!((snake_bound(3.0, Some(0.5), 1, 0.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        let v = snake_bound(4.0, None, 2, 0.1).unwrap();
        assert!((v - (4f64.ln() / 2.0 - 0.1)).abs() < 1e-15);
        assert!(snake_bound(1.0, None, 1, 0.0).is_err());
        assert!(snake_bound(3.0, Some(1.0), 1, 0.0).is_err());
        assert!(snake_bound(3.0, Some(0.0), 1, 0.0).is_err());
    }

    #[test]
    fn yomdin_examples() {
        let l3 = 3f64.ln();
        assert!((yomdin_defect(l3, 2, 1).unwrap() - 4.0 * l3).abs() < 1e-15);
        assert!(yomdin_defect(l3, 2, 1_000_000).unwrap() < 1e-5);
        assert_eq!(yomdin_defect(0.0, 3, 7).unwrap(), 0.0);
        assert!(yomdin_defect(l3, 4, 1).is_err());
        assert!(yomdin_defect(l3, 2, 0).is_err());
    }

    #[test]
    fn verdict_examples() {
        let p = [2f64.ln(), 3f64.ln()];
        assert_eq!(
            variation_verdict(&p, 1, 0.0).unwrap().tags,
            vec![Verdict::Varies]
        );
        let b = variation_verdict(&p, 0, 0.0).unwrap();
        assert!(b.contains(Verdict::ConstantCinf) && b.contains(Verdict::ConstantCk));
        let c = variation_verdict(&p, 0, 1.0).unwrap();
        assert!(c.contains(Verdict::ConstantCinf) && c.contains(Verdict::Undecided));
        assert!(!c.contains(Verdict::ConstantCk));
        assert!((c.gap - 1.5f64.ln()).abs() < 1e-15);
        assert!(variation_verdict(&p, 2, 0.0).is_err());
        assert!(variation_verdict(&[], 0, 0.0).is_err());
    }
}
