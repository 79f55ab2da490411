//! A fast subset of the acceptance checks.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::json;

use qquarter::arith::{hilbert_symbol, int, rat, squarefree_part, Place};
use qquarter::curvelab::{find_q14_curve, trace_census, verify_frobenius_scalar, FiniteField};
use qquarter::isogeny::{trace_set, IsogenyClass};
use qquarter::lfunc::{l_values, verify_identity_exact, Fixed};
use qquarter::qquarter::{has_arithmetic_spin, realizations, similitude_rep, spin_lift};
use qquarter::spinspace::covering_map;

use crate::Report;

fn census_matches() -> bool {
    [(2u64, 2u32), (5, 1), (7, 1), (3, 2)]
        .into_iter()
        .all(|(p, a)| {
            let field = Arc::new(FiniteField::new(p, a).expect("small field"));
            let counted: Vec<i64> = trace_census(&field).into_keys().collect();
            trace_set(p, a).is_ok_and(|t| t == counted)
        })
}

fn spin_structures() -> bool {
    [2u64, 3, 5, 7].into_iter().all(|p| {
        let pp = p as i64;
        let minus = IsogenyClass::new(p, 2, -2 * pp).expect("class");
        let plus = IsogenyClass::new(p, 2, 2 * pp).expect("class");
        let (Ok(cm), Ok(cp)) = (has_arithmetic_spin(&minus), has_arithmetic_spin(&plus)) else {
            return false;
        };
        let Some(s) = cm.structure() else {
            return false;
        };
        let disc_ok = squarefree_part(&int(-pp)).is_ok_and(|d| &d == s.clifford().delta());
        let rep = similitude_rep(s);
        let lift_ok = spin_lift(&rep).is_some_and(|lift| {
            covering_map(lift.z()).is_ok_and(|z2| z2.as_rational() == Some(&int(-pp)))
                && realizations(&lift, 11)
                    .is_ok_and(|r| r.eigen_abs_sq == int(pp) && r.normalized_slope == rat(1, 4))
        });
        !cp.is_arithmetic() && disc_ok && lift_ok
    })
}

fn l_identity() -> bool {
    let tol = Fixed::from_rational(&rat(1, 1_000_000_000_000));
    let exact = (1..=3).all(|n| {
        [2u64, 3, 5, 7, 11, 13]
            .iter()
            .all(|&p| verify_identity_exact(p, n).is_ok_and(|pr| pr.holds))
    });
    let numeric = [rat(1, 2), rat(3, 4), rat(1, 1), rat(2, 1)]
        .iter()
        .all(|s| l_values(3, 1, s).is_ok_and(|v| v.identity_gap() < tol));
    let known = l_values(3, 1, &int(1))
        .is_ok_and(|v| v.l_e.exact == Some(rat(9, 16)) && v.l_spin_half.exact == Some(rat(3, 4)));
    exact && numeric && known
}

fn frobenius() -> bool {
    [5u64, 7]
        .into_iter()
        .all(|p| find_q14_curve(p).is_ok_and(|e| verify_frobenius_scalar(&e).unwrap_or(false)))
}

fn hilbert_reciprocity() -> bool {
    let places: Vec<Place> = [2u64, 3, 5, 7, 11, 13]
        .into_iter()
        .map(|p| Place::prime(p).expect("prime"))
        .chain([Place::Infinity])
        .collect();
    (-13i64..=13).filter(|&a| a != 0).all(|a| {
        [-6i64, -1, 2, 3, 5, 10].into_iter().all(|b| {
            let prod: i64 = places
                .iter()
                .map(|&v| i64::from(hilbert_symbol(&int(a), &int(b), v).unwrap_or(0)))
                .product();
            prod == 1
        })
    })
}

type Check = (&'static str, fn() -> bool);

pub fn run() -> Report {
    let checks: [Check; 5] = [
        ("census", census_matches),
        ("spin_structures", spin_structures),
        ("l_identity", l_identity),
        ("frobenius", frobenius),
        ("hilbert_reciprocity", hilbert_reciprocity),
    ];
    let mut human = String::new();
    let mut results = Vec::new();
    let mut all = true;
    for (name, check) in checks {
        let pass = check();
        all &= pass;
        let _ = writeln!(human, "{} {name}", if pass { "PASS" } else { "FAIL" });
        results.push(json!({"name": name, "pass": pass}));
    }
    Report {
        json: json!({"checks": results, "all_pass": all}),
        human,
    }
}
