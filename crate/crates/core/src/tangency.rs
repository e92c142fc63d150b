//! The transition matrix of an unfolded homoclinic tangency.
//!
//! A basic set with Markov partition `R_1..R_s` and matrix `H` gains, after
//! the tangency unfolds, a transversal homoclinic orbit whose neighbourhood
//! is covered by strips `S_1..S_l` with `l = N1 + N2 - 1`. The strips form a
//! simple chain entered from `R_1` and leaving into `R_s`.
//!
//! Symbol layout (zero-based): `0..s` are the rectangles, `s..s+l` the strips.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::format_float;
use crate::sft::{is_irreducible, spectral_radius, TransitionMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    h: TransitionMatrix,
    n1: usize,
    n2: usize,
}

impl ExtensionSpec {
    pub fn new(h: TransitionMatrix, n1: usize, n2: usize) -> Result<Self> {
        if h.order() < 2 {
            return Err(Error::InvalidSpec(format!(
                "base matrix must have order >= 2, got {}",
                h.order()
            )));
        }
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidSpec(format!(
                "transit lengths must be positive, got N1={n1}, N2={n2}"
            )));
        }
        if !is_irreducible(&h) {
            return Err(Error::InvalidSpec(
                "base matrix H is not irreducible".into(),
            ));
        }
        Ok(Self { h, n1, n2 })
    }

    pub fn h(&self) -> &TransitionMatrix {
        &self.h
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Number of rectangles of the base partition.
    pub fn s(&self) -> usize {
        self.h.order()
    }

    /// Number of strips along the transversal homoclinic orbit.
    pub fn ell(&self) -> usize {
        self.n1 + self.n2 - 1
    }

    pub fn extended_order(&self) -> usize {
        self.s() + self.ell()
    }
}

/// Builds the `(s + l) x (s + l)` matrix of the unfolded tangency.
pub fn extend_matrix(spec: &ExtensionSpec) -> TransitionMatrix {
    let s = spec.s();
    let ell = spec.ell();
    let mut a = TransitionMatrix::zeros(s + ell).expect("order >= 3");
    for i in 0..s {
        for j in 0..s {
            a.set(i, j, spec.h.get(i, j));
        }
    }
    // R_1 -> S_1, S_l -> R_s, and S_j -> S_{j+1}
    a.set(0, s, true);
    a.set(s + ell - 1, s - 1, true);
    for i in s..s + ell - 1 {
        a.set(i, i + 1, true);
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongOrder {
        expected: usize,
        found: usize,
    },
    /// Rectangle block differs from `H` at `(row, col)`.
    RectangleBlockMismatch {
        row: usize,
        col: usize,
    },
    /// `R_1` does not reach `S_1`.
    MissingEntryIntoStrips,
    /// A rectangle other than `R_1 -> S_1` reaches a strip.
    ExtraEntryIntoStrips {
        row: usize,
        col: usize,
    },
    /// `S_j` does not reach `S_{j+1}`; `row` is the strip's symbol.
    BrokenChain {
        row: usize,
    },
    /// The last strip does not reach `R_s`.
    MissingExit,
    /// A strip has a successor outside its chain link.
    ExtraEntryFromStrip {
        row: usize,
        col: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongOrder { expected, found } => {
                write!(f, "WRONG_ORDER expected {expected} found {found}")
            }
            Violation::RectangleBlockMismatch { row, col } => {
                write!(f, "RECTANGLE_BLOCK_MISMATCH at ({row}, {col})")
            }
            Violation::MissingEntryIntoStrips => write!(f, "MISSING_ENTRY_INTO_STRIPS"),
            Violation::ExtraEntryIntoStrips { row, col } => {
                write!(f, "EXTRA_ENTRY_INTO_STRIPS at ({row}, {col})")
            }
            Violation::BrokenChain { row } => write!(f, "BROKEN_CHAIN at strip row {row}"),
            Violation::MissingExit => write!(f, "MISSING_EXIT"),
            Violation::ExtraEntryFromStrip { row, col } => {
                write!(f, "EXTRA_ENTRY_FROM_STRIP at ({row}, {col})")
            }
        }
    }
}

/// Checks every structural clause of the Markov partition built from the
/// strips. An empty result means `a` is exactly the extended matrix.
pub fn validate_markov_structure(a: &TransitionMatrix, spec: &ExtensionSpec) -> Vec<Violation> {
    let s = spec.s();
    let ell = spec.ell();
    let n = s + ell;
    if a.order() != n {
        return vec![Violation::WrongOrder {
            expected: n,
            found: a.order(),
        }];
    }
    let mut out = Vec::new();
    for i in 0..s {
        for j in 0..s {
            if a.get(i, j) != spec.h.get(i, j) {
                out.push(Violation::RectangleBlockMismatch { row: i, col: j });
            }
        }
    }
    if !a.get(0, s) {
        out.push(Violation::MissingEntryIntoStrips);
    }
    for i in 0..s {
        for j in s..n {
            if a.get(i, j) && !(i == 0 && j == s) {
                out.push(Violation::ExtraEntryIntoStrips { row: i, col: j });
            }
        }
    }
    for i in s..n {
        let last = i == n - 1;
        let link = if last { s - 1 } else { i + 1 };
        if !a.get(i, link) {
            out.push(if last {
                Violation::MissingExit
            } else {
                Violation::BrokenChain { row: i }
            });
        }
        for j in (0..n).filter(|&j| j != link) {
            if a.get(i, j) {
                out.push(Violation::ExtraEntryFromStrip { row: i, col: j });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    /// `radii[0]` is the radius of the extended matrix; `radii[k]` that of
    /// the matrix with its last `k` rows and columns removed. `radii[l]`
    /// belongs to `H`.
    pub radii: Vec<f64>,
    /// `strict_steps[k]` is `radii[k] > radii[k + 1] + margin`.
    pub strict_steps: Vec<bool>,
    pub margin: f64,
    pub conclusion: bool,
}

impl ChainReport {
    pub fn is_non_increasing(&self) -> bool {
        self.radii.windows(2).all(|w| w[1] <= w[0] + self.margin)
    }

    /// CSV with columns `step,radius,strict`; the last row has no step after
    /// it and leaves `strict` empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,radius,strict\n");
        for (k, r) in self.radii.iter().enumerate() {
            let strict = self
                .strict_steps
                .get(k)
                .map(|b| b.to_string())
                .unwrap_or_default();
            out.push_str(&format!("{k},{},{strict}\n", format_float(*r)));
        }
        out
    }
}

pub fn strictness_margin(tol: f64) -> f64 {
    (10.0 * tol).max(1e-9)
}

/// Spectral radii along the nested last-index principal minors, from the
/// extended matrix down to `H`.
pub fn perron_chain(a: &TransitionMatrix, spec: &ExtensionSpec, tol: f64) -> Result<ChainReport> {
    let violations = validate_markov_structure(a, spec);
    if !violations.is_empty() {
        return Err(Error::InvalidSpec(format!(
            "matrix is not the extension of the given spec: {}",
            violations[0]
        )));
    }
    let ell = spec.ell();
    let mut radii = Vec::with_capacity(ell + 1);
    let mut current = a.clone();
    radii.push(spectral_radius(&current, tol)?.radius);
    for _ in 0..ell {
        current = current.principal_minor(current.order() - 1)?;
        radii.push(spectral_radius(&current, tol)?.radius);
    }
    let margin = strictness_margin(tol);
    let strict_steps = radii.windows(2).map(|w| w[0] > w[1] + margin).collect();
    let conclusion = radii[0] > radii[ell] + margin;
    Ok(ChainReport {
        radii,
        strict_steps,
        margin,
        conclusion,
    })
}

/// `log(lambda_mu) - log(lambda_0)`: the entropy gained by the unfolded
/// subsystem over the base piece.
pub fn entropy_gap(spec: &ExtensionSpec, tol: f64) -> Result<f64> {
    let lambda_mu = spectral_radius(&extend_matrix(spec), tol)?.radius;
    let lambda_0 = spectral_radius(spec.h(), tol)?.radius;
    Ok(lambda_mu.ln() - lambda_0.ln())
}

/// Parsed `key = value` spec file. The matrix path is kept unresolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub h_path: String,
    pub n1: usize,
    pub n2: usize,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let (mut h, mut n1, mut n2) = (None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| {
                    Error::Parse(format!("line {}: expected key = value", lineno + 1))
                })?;
            let (key, value) = (key.trim(), value.trim());
            let parse_n = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad integer {v:?}", lineno + 1)))
            };
            match key {
                "H" | "H-file" | "h" => h = Some(value.to_string()),
                "N1" | "n1" => n1 = Some(parse_n(value)?),
                "N2" | "n2" => n2 = Some(parse_n(value)?),
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(Self {
            h_path: h.ok_or_else(|| Error::Parse("missing key H".into()))?,
            n1: n1.ok_or_else(|| Error::Parse("missing key N1".into()))?,
            n2: n2.ok_or_else(|| Error::Parse("missing key N2".into()))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_shift_spec(n1: usize, n2: usize) -> ExtensionSpec {
        ExtensionSpec::new(TransitionMatrix::full_shift(2).unwrap(), n1, n2).unwrap()
    }

    #[test]
    fn five_by_five_example() {
        let a = extend_matrix(&two_shift_spec(2, 2));
        let expected = TransitionMatrix::from_rows(&[
            [1u8, 1, 1, 0, 0],
            [1, 1, 0, 0, 0],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
            [0, 1, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn three_by_three_example() {
        let a = extend_matrix(&two_shift_spec(1, 1));
        let expected = TransitionMatrix::from_rows(&[[1u8, 1, 1], [1, 1, 0], [0, 1, 0]]).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn strip_rows_have_single_successor() {
        let spec = two_shift_spec(3, 2);
        let a = extend_matrix(&spec);
        assert_eq!(a.order(), spec.s() + spec.ell());
        for i in spec.s()..a.order() {
            assert_eq!(a.successors(i).count(), 1);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let reducible = TransitionMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        assert!(matches!(
            ExtensionSpec::new(reducible, 1, 1),
            Err(Error::InvalidSpec(_))
        ));
        let one = TransitionMatrix::full_shift(1).unwrap();
        assert!(ExtensionSpec::new(one, 1, 1).is_err());
        assert!(ExtensionSpec::new(TransitionMatrix::full_shift(2).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn validator_catches_injected_defects() {
        let spec = two_shift_spec(2, 2);
        let a = extend_matrix(&spec);
        assert!(validate_markov_structure(&a, &spec).is_empty());

        let s = spec.s();
        let mut broken = a.clone();
        broken.set(s, s + 1, false);
        assert_eq!(
            validate_markov_structure(&broken, &spec),
            vec![Violation::BrokenChain { row: s }]
        );

        let mut extra = a.clone();
        extra.set(1, s, true);
        assert_eq!(
            validate_markov_structure(&extra, &spec),
            vec![Violation::ExtraEntryIntoStrips { row: 1, col: s }]
        );

        let wrong = TransitionMatrix::full_shift(3).unwrap();
        assert!(matches!(
            validate_markov_structure(&wrong, &spec)[0],
            Violation::WrongOrder { .. }
        ));
    }

    #[test]
    fn chain_ends_at_base_radius() {
        let spec = two_shift_spec(2, 2);
        let report = perron_chain(&extend_matrix(&spec), &spec, 1e-12).unwrap();
        assert_eq!(report.radii.len(), spec.ell() + 1);
        assert!(report.conclusion);
        assert!((report.radii[3] - 2.0).abs() < 1e-9);
        assert!(report.is_non_increasing());
        let csv = report.to_csv();
        assert!(csv.starts_with("step,radius,strict\n0,"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn chain_rejects_foreign_matrix() {
        let spec = two_shift_spec(1, 1);
        assert!(perron_chain(&TransitionMatrix::full_shift(3).unwrap(), &spec, 1e-12).is_err());
    }

    #[test]
    fn spec_file_parsing() {
        let f = SpecFile::parse("# base\nH = h.mat\nN1 = 2\nN2: 3\n").unwrap();
        assert_eq!(
            f,
            SpecFile {
                h_path: "h.mat".into(),
                n1: 2,
                n2: 3
            }
        );
        assert!(SpecFile::parse("H = h.mat\nN1 = 2\n").is_err());
        assert!(SpecFile::parse("H = h.mat\nN1 = 2\nN2 = 1\nX = 4\n").is_err());
    }
}
