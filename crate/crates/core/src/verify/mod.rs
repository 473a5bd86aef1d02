//! Interpolant checking, semantic equivalence, the bounded oracle and the
//! test corpus.

pub mod corpus;
pub mod ksat;
mod oracle;

use serde::{Deserialize, Serialize};

use crate::formula::{polarity, sig, size_dag, size_string, Formula};
use crate::semantics::{eval, PointedModel};

pub use ksat::{check_implication, find_model, is_satisfiable, is_valid, valid_implication, KSat};
pub use oracle::{complete_bounds, oracle_sat, ORACLE_BUDGET};

/// Outcome of checking a candidate interpolant `theta` for `phi -> psi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpolantReport {
    pub theta: Formula,
    /// `phi -> theta` is valid.
    pub left_valid: bool,
    /// `theta -> psi` is valid.
    pub right_valid: bool,
    pub signature_ok: bool,
    pub lyndon_ok: Option<bool>,
    pub size_string: u64,
    pub size_dag: usize,
    /// A model refuting the first failed implication.
    pub countermodel: Option<PointedModel>,
}

impl InterpolantReport {
    pub fn craig_ok(&self) -> bool {
        self.left_valid && self.right_valid && self.signature_ok
    }

    /// Craig conditions plus the polarity condition when it was checked.
    pub fn all_ok(&self) -> bool {
        self.craig_ok() && self.lyndon_ok.unwrap_or(true)
    }
}

pub fn check_craig(theta: Formula, phi: Formula, psi: Formula) -> InterpolantReport {
    let left = check_implication(phi, theta);
    let right = check_implication(theta, psi);
    let shared = sig(phi).intersection(&sig(psi));
    let countermodel = match (&left, &right) {
        (Err(m), _) => Some((**m).clone()),
        (_, Err(m)) => Some((**m).clone()),
        _ => None,
    };
    if let Some(m) = &countermodel {
        let refuted = if left.is_err() {
            Formula::and(phi, Formula::not(theta))
        } else {
            Formula::and(theta, Formula::not(psi))
        };
        assert!(eval(&m.model, m.point, refuted).unwrap_or(false));
    }
    InterpolantReport {
        theta,
        left_valid: left.is_ok(),
        right_valid: right.is_ok(),
        signature_ok: sig(theta).is_subset(&shared),
        lyndon_ok: None,
        size_string: size_string(theta),
        size_dag: size_dag(theta),
        countermodel,
    }
}

/// Every letter occurring positively (negatively) in `theta` occurs
/// positively (negatively) in both `phi` and `psi`.
pub fn lyndon_polarity_ok(theta: Formula, phi: Formula, psi: Formula) -> bool {
    let (t, a, b) = (polarity(theta), polarity(phi), polarity(psi));
    t.positive.is_subset(&a.positive.intersection(&b.positive))
        && t.negative.is_subset(&a.negative.intersection(&b.negative))
}

pub fn check_lyndon(theta: Formula, phi: Formula, psi: Formula) -> InterpolantReport {
    let mut report = check_craig(theta, phi, psi);
    report.lyndon_ok = Some(lyndon_polarity_ok(theta, phi, psi));
    report
}

/// Semantic equivalence in K.
pub fn equivalent(a: Formula, b: Formula) -> bool {
    valid_implication(a, b) && valid_implication(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn craig_report_cases() {
        let r = check_craig(p("q"), p("p"), p("p"));
        assert!(!r.signature_ok);
        let r = check_craig(p("true"), p("<>p"), p("[]p"));
        assert!(r.left_valid);
        assert!(!r.right_valid);
        let m = r.countermodel.unwrap();
        assert!(eval(&m.model, m.point, p("~[]p")).unwrap());
        let r = check_craig(p("p"), p("p & q"), p("p | r"));
        assert!(r.craig_ok() && r.countermodel.is_none());
    }

    #[test]
    fn lyndon_polarity() {
        // ~p occurs only in theta, and p only positively in phi and psi
        let r = check_lyndon(p("p | ~p"), p("p"), p("p | true"));
        assert_eq!(r.lyndon_ok, Some(false));
        let r = check_lyndon(p("<>p"), p("<>(p & q)"), p("<>(p | r)"));
        assert_eq!(r.lyndon_ok, Some(true));
        assert!(r.all_ok());
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(p("nabla{p}"), p("<>p & []p")));
        assert!(equivalent(p("<>(p | q)"), p("<>p | <>q")));
        assert!(!equivalent(p("[]p"), p("[]q")));
    }

    #[test]
    fn report_serialises() {
        let r = check_craig(p("true"), p("<>p"), p("[]p"));
        let json = serde_json::to_string(&r).unwrap();
        let back: InterpolantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.right_valid, r.right_valid);
        assert!(back.countermodel.is_some());
    }
}
