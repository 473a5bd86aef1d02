//! Lower-bound formula families and interpolant size measurements.

use std::fmt;
use std::str::FromStr;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{size_dag, size_string, Formula};
use crate::verify::{check_craig, equivalent};

fn p(i: usize) -> Formula {
    Formula::prop(&format!("p{i}"))
}

fn q(i: usize) -> Formula {
    Formula::prop(&format!("q{i}"))
}

fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
    items.into_iter().reduce(Formula::and).unwrap_or_else(Formula::top)
}

/// `(phi_n, psi_n, chi_n)`: every Craig interpolant of `phi_n -> psi_n` is
/// equivalent to `chi_n`, whose DAG size is at least `2^n`.
pub fn lower_bound_family(n: usize) -> Result<(Formula, Formula, Formula)> {
    if n == 0 {
        return Err(Error::Precondition("lower-bound family needs n >= 1".into()));
    }
    let s = Formula::prop("s");
    let mut phi = Formula::diamond(s);
    for i in 1..=n {
        let keep_pos = Formula::implies(p(i), Formula::boxed(Formula::implies(s, p(i))));
        let keep_neg = Formula::implies(
            Formula::not(p(i)),
            Formula::boxed(Formula::implies(s, Formula::not(p(i)))),
        );
        phi = Formula::and(phi, Formula::and(keep_pos, keep_neg));
    }
    let transfer = conj((1..=n).map(|i| {
        Formula::and(
            Formula::implies(p(i), Formula::boxed(q(i))),
            Formula::implies(Formula::not(p(i)), Formula::boxed(Formula::not(q(i)))),
        )
    }));
    let agree = conj((1..=n).map(|i| Formula::iff(p(i), q(i))));
    let psi = Formula::implies(transfer, Formula::diamond(agree));
    let chi = Formula::disjunction((0..1usize << n).rev().map(|mask| {
        let tau = tau(n, mask);
        Formula::and(tau, Formula::diamond(tau))
    }));
    Ok((phi, psi, chi))
}

/// The literal conjunction fixing `p_i` true exactly for the bits of `mask`.
fn tau(n: usize, mask: usize) -> Formula {
    conj((1..=n).map(|i| {
        if mask & (1 << (i - 1)) != 0 {
            p(i)
        } else {
            Formula::not(p(i))
        }
    }))
}

/// Nested non-contingency: `[]p | []~p`, then `[]c | []~c` on the previous one.
pub fn nested_noncontingency(n: usize) -> Formula {
    let step = |c: Formula| Formula::or(Formula::boxed(c), Formula::boxed(Formula::not(c)));
    (0..=n).fold(Formula::prop("p"), |c, _| step(c))
}

/// Interpolation method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Nabla,
    Automata,
    Quasimodel,
    Sequent,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Nabla, Method::Automata, Method::Quasimodel, Method::Sequent];

    pub fn name(self) -> &'static str {
        match self {
            Method::Nabla => "nabla",
            Method::Automata => "automata",
            Method::Quasimodel => "quasimodel",
            Method::Sequent => "sequent",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown method {s:?}")))
    }
}

/// A Craig interpolant of `phi -> psi` by the given method.
pub fn interpolate(method: Method, phi: Formula, psi: Formula) -> Result<Formula> {
    match method {
        Method::Nabla => crate::nabla::craig_via_nabla(phi, psi),
        Method::Automata => crate::automata::craig_via_automata(phi, psi),
        Method::Quasimodel => crate::quasimodel::lyndon_interpolant(phi, psi),
        Method::Sequent => crate::sequent::craig_via_sequent(phi, psi),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub method: Method,
    pub size_string: u64,
    pub size_dag: usize,
    pub millis: f64,
    /// Craig conditions hold and the result is equivalent to `chi_n`.
    pub verified: bool,
    /// Timeout or error message when no interpolant was produced.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub const DEFAULT_N_MAX: usize = 3;

/// One row per `(n, method)` for `n` in `1..=n_max`. A row that exceeds
/// `timeout` is recorded unverified; its worker thread is left to finish.
pub fn run_bench(n_max: usize, methods: &[Method], timeout: Option<Duration>) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        if methods.is_empty() {
            break;
        }
        let (phi, psi, chi) = lower_bound_family(n)?;
        for &method in methods {
            rows.push(bench_row(n, method, phi, psi, chi, timeout));
        }
    }
    Ok(rows)
}

/// A single bench measurement; see [`run_bench`].
pub fn bench_row(
    n: usize,
    method: Method,
    phi: Formula,
    psi: Formula,
    chi: Formula,
    timeout: Option<Duration>,
) -> BenchRow {
    let start = Instant::now();
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(interpolate(method, phi, psi));
    });
    let outcome = match timeout {
        Some(t) => rx
            .recv_timeout(t)
            .map_err(|_| format!("timed out after {} ms", t.as_millis())),
        None => rx.recv().map_err(|_| "worker panicked".to_string()),
    };
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let failed = |error: String| BenchRow {
        n,
        method,
        size_string: 0,
        size_dag: 0,
        millis,
        verified: false,
        error: Some(error),
    };
    match outcome {
        Ok(Ok(theta)) => {
            let verified = check_craig(theta, phi, psi).craig_ok() && equivalent(theta, chi);
            let size_dag = size_dag(theta);
            if verified {
                assert!(size_dag >= 1 << n, "{method} interpolant below the 2^n bound at n={n}");
            }
            BenchRow {
                n,
                method,
                size_string: size_string(theta),
                size_dag,
                millis,
                verified,
                error: None,
            }
        }
        Ok(Err(e)) => failed(e.to_string()),
        Err(e) => failed(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, polarity, size_dag, size_string};
    use crate::verify::{check_craig, valid_implication};

    #[test]
    fn first_member_matches_display() {
        let (phi, psi, chi) = lower_bound_family(1).unwrap();
        assert_eq!(
            phi,
            parse("<>s & ((p1 -> [](s -> p1)) & (~p1 -> [](s -> ~p1)))").unwrap()
        );
        assert_eq!(chi, parse("p1 & <>p1 | ~p1 & <>~p1").unwrap());
        assert_eq!(
            psi,
            parse("(p1 -> []q1) & (~p1 -> []~q1) -> <>((p1 -> q1) & (q1 -> p1))").unwrap()
        );
        assert!(valid_implication(phi, psi));
        assert!(check_craig(chi, phi, psi).craig_ok());
        assert!(lower_bound_family(0).is_err());
    }

    #[test]
    fn phi_one_polarity() {
        let (phi, _, _) = lower_bound_family(1).unwrap();
        let r = polarity(phi);
        for l in ["p1", "s"] {
            assert!(r.positive.contains(l) && r.negative.contains(l), "{l}");
        }
    }

    #[test]
    fn family_sizes() {
        for n in 1..=4 {
            let (phi, psi, chi) = lower_bound_family(n).unwrap();
            assert!(size_dag(chi) >= 1 << n);
            // linear in n for the two endpoints
            assert!(size_string(phi) <= 40 * n as u64 + 10);
            assert!(size_string(psi) <= 60 * n as u64 + 10);
        }
    }

    #[test]
    fn nested_sizes() {
        assert_eq!(nested_noncontingency(0), parse("[]p | []~p").unwrap());
        for n in 0..=6u32 {
            assert_eq!(size_string(nested_noncontingency(n as usize)), 14 * 2u64.pow(n) - 6);
        }
    }

    #[test]
    fn bench_rows() {
        let rows = run_bench(1, &Method::ALL, None).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.verified && r.size_dag >= 2), "{rows:?}");
        let rows = run_bench(2, &[Method::Nabla], None).unwrap();
        assert!(rows[1].verified && rows[1].size_dag >= 4);
        assert!(run_bench(3, &[], None).unwrap().is_empty());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("tableau".parse::<Method>().is_err());
    }
}
