use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use qquarter::arith::{
    factorize, format_rational, hilbert_symbol, is_prime_u64, parse_rational, rat,
    set_factor_bound, ArithError, Place, Rational,
};
use qquarter::curvelab::{
    find_q14_curve, trace_census, verify_frobenius_scalar, CurveError, CurveRecord, FiniteField,
};
use qquarter::isogeny::{enumerate_classes, IsogenyClass, IsogenyError};
use qquarter::lfunc::{l_values, verify_identity_exact, zeta_h1, zeta_spin, Fixed, LFuncError};
use qquarter::qquarter::{
    has_arithmetic_spin_with_bound, realizations, similitude_rep, spin_lift, QQuarterError,
    SpinCertificate,
};
use qquarter::quat::{
    b_p_infty, ramified_places, QuatError, QuaternionAlgebra, DEFAULT_SEARCH_BOUND,
};
use qquarter::spinspace::SpinError;

use crate::Report;

/// Upper limit on `q^(free coefficients + 1)` field operations for `curves --census`.
const CENSUS_WORK_LIMIT: u64 = 200_000_000;

#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub detail: String,
    usage: bool,
}

impl CliError {
    pub fn usage(detail: impl Into<String>) -> Self {
        CliError {
            code: "usage",
            detail: detail.into(),
            usage: true,
        }
    }

    fn domain(code: &'static str, detail: impl ToString) -> Self {
        CliError {
            code,
            detail: detail.to_string(),
            usage: false,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.usage {
            2
        } else {
            1
        }
    }
}

macro_rules! domain_error {
    ($ty:ty, $code:literal) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::domain($code, e)
            }
        }
    };
}

domain_error!(ArithError, "arith");
domain_error!(QuatError, "quat");
domain_error!(IsogenyError, "isogeny");
domain_error!(SpinError, "spin");
domain_error!(QQuarterError, "spin_structure");
domain_error!(LFuncError, "lfunc");
domain_error!(CurveError, "curves");

fn env_u64(name: &str) -> Result<Option<u64>, CliError> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::usage(format!("{name} must be a non-negative integer, got {v:?}"))
        }),
        Err(_) => Ok(None),
    }
}

/// Applies `FACTOR_BOUND`; `SEARCH_BOUND` is read per command.
pub fn apply_environment() -> Result<(), CliError> {
    if let Some(b) = env_u64("FACTOR_BOUND")? {
        set_factor_bound(b);
    }
    search_bound().map(|_| ())
}

fn search_bound() -> Result<u64, CliError> {
    Ok(env_u64("SEARCH_BOUND")?.unwrap_or(DEFAULT_SEARCH_BOUND))
}

fn parse_rational_arg(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s)
        .ok_or_else(|| CliError::usage(format!("--{name}: not a rational number: {s:?}")))
}

fn require_prime(p: u64) -> Result<(), CliError> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(ArithError::NotPrime(p.to_string()).into())
    }
}

fn place_list(places: impl IntoIterator<Item = Place>) -> Vec<String> {
    places.into_iter().map(|v| v.to_string()).collect()
}

pub fn hilbert(a: &str, b: &str, place: Option<&str>) -> Result<Report, CliError> {
    let (a, b) = (parse_rational_arg("a", a)?, parse_rational_arg("b", b)?);
    let (fa, fb) = (format_rational(&a), format_rational(&b));
    match place {
        Some(v) => {
            let v: Place = v.parse()?;
            let symbol = hilbert_symbol(&a, &b, v)?;
            Ok(Report {
                json: json!({"a": fa, "b": fb, "place": v.to_string(), "symbol": symbol}),
                human: format!("({fa}, {fb})_{v} = {symbol}\n"),
            })
        }
        None => {
            let algebra = QuaternionAlgebra::new(a, b)?;
            let ram = ramified_places(&algebra)?;
            let places = place_list(ram.places().iter().copied());
            Ok(Report {
                human: format!("({fa}, {fb}) is ramified at {ram}\n"),
                json: json!({"a": fa, "b": fb, "ramified": places, "split": ram.is_split()}),
            })
        }
    }
}

pub fn bpinf(p: u64) -> Result<Report, CliError> {
    let algebra = b_p_infty(p)?;
    let ram = ramified_places(&algebra)?;
    Ok(Report {
        human: format!("B_{{{p},inf}} = {algebra}, ramified at {ram}\n"),
        json: json!({
            "p": p,
            "algebra": serde_json::to_value(&algebra).expect("serializable"),
            "ramified": place_list(ram.places().iter().copied()),
        }),
    })
}

pub fn classify(p: u64, a: u32) -> Result<Report, CliError> {
    let classes = enumerate_classes(p, a)?;
    let mut human = String::new();
    for c in &classes {
        let _ = writeln!(
            human,
            "beta = {:>4}  {:<13} {:<19} spinorial = {}",
            c.beta(),
            c.kind().to_string(),
            c.endo().to_string(),
            c.is_spinorial()
        );
    }
    let _ = writeln!(
        human,
        "{} classes over F_{}",
        classes.len(),
        classes.first().map_or(0, IsogenyClass::q)
    );
    Ok(Report {
        json: serde_json::to_value(&classes).expect("serializable"),
        human,
    })
}

fn p_power_i64(p: u64, n: u32) -> Result<i64, CliError> {
    num_traits::pow(BigInt::from(p), n as usize)
        .to_i64()
        .ok_or_else(|| IsogenyError::QTooLarge { p, a: 2 * n }.into())
}

/// The smallest prime other than `p`, used as the default `ℓ`.
fn default_ell(p: u64) -> u64 {
    if p == 2 {
        3
    } else {
        2
    }
}

pub fn spin(p: u64, n: u32, beta: Option<i64>) -> Result<Report, CliError> {
    require_prime(p)?;
    if n == 0 {
        return Err(IsogenyError::ZeroExponent.into());
    }
    let pn = p_power_i64(p, n)?;
    let beta = beta.unwrap_or(-2 * pn);
    let class = IsogenyClass::new(p, 2 * n, beta)?;
    let tau = class.frobenius_scalar()?.tau();
    let cert = has_arithmetic_spin_with_bound(&class, search_bound()?)?;
    let algebra = b_p_infty(p)?;
    let base = json!({
        "class": serde_json::to_value(class).expect("serializable"),
        "algebra": serde_json::to_value(&algebra).expect("serializable"),
        "tau": tau,
    });
    let Value::Object(mut doc) = base else {
        unreachable!()
    };
    let human = match &cert {
        SpinCertificate::Arithmetic { structure, .. } => {
            let rep = similitude_rep(structure);
            let lift = spin_lift(&rep).ok_or_else(|| {
                CliError::domain("spin_structure", "arithmetic structure without a spin lift")
            })?;
            let real = realizations(&lift, default_ell(p))?;
            let sigma = structure.sigma();
            let delta = structure.clifford().delta();
            doc.insert("arithmetic".into(), json!(true));
            doc.insert("reason".into(), Value::Null);
            doc.insert(
                "u".into(),
                serde_json::to_value(sigma.u()).expect("serializable"),
            );
            doc.insert(
                "disc".into(),
                json!(delta_json(sigma.discriminant()?.representative())),
            );
            doc.insert("delta".into(), json!(delta_json(delta.representative())));
            doc.insert("lift".into(), json!(lift.z().to_string()));
            doc.insert(
                "eigen_abs_sq".into(),
                json!(format_rational(&real.eigen_abs_sq)),
            );
            doc.insert(
                "slope".into(),
                json!(format_rational(&real.normalized_slope)),
            );
            format!(
                "class {class}\nB = {algebra}\nsigma = int(u) o gamma, u = {}\ndisc = {}, K = {}\n\
                 tau = {tau}, spin lift z = {}\n|z|^2 = {}, slope = {}\n",
                sigma.u(),
                sigma.discriminant()?,
                structure.clifford(),
                lift.z(),
                format_rational(&real.eigen_abs_sq),
                format_rational(&real.normalized_slope),
            )
        }
        other => {
            let reason = match other {
                SpinCertificate::PositiveFrobenius => {
                    "tau = +p^n has no square root in the Clifford algebra".to_string()
                }
                SpinCertificate::NoNormOnePure(v) => {
                    format!("no pure quaternion of norm 1 (obstructed at {v})")
                }
                SpinCertificate::Arithmetic { .. } => unreachable!(),
            };
            for key in ["u", "disc", "delta", "lift", "eigen_abs_sq", "slope"] {
                doc.insert(key.into(), Value::Null);
            }
            doc.insert("arithmetic".into(), json!(false));
            doc.insert("reason".into(), json!(reason));
            format!("class {class}\nB = {algebra}\ntau = {tau}\nno arithmetic spin structure: {reason}\n")
        }
    };
    Ok(Report {
        json: Value::Object(doc),
        human,
    })
}

fn delta_json(d: &BigInt) -> Value {
    match d.to_i64() {
        Some(v) => json!(v),
        None => json!(d.to_string()),
    }
}

pub fn lfunc(p: u64, n: u32, s: &str) -> Result<Report, CliError> {
    let s = parse_rational_arg("s", s)?;
    let zs = zeta_spin(p, n)?;
    let zh = zeta_h1(p, n)?;
    let proof = verify_identity_exact(p, n)?;
    let values = l_values(p, n, &s)?;
    let tolerance = Fixed::from_rational(&rat(1, 1_000_000_000_000));
    let within = values.identity_gap() < tolerance;
    let exact = |v: &qquarter::lfunc::LValue| {
        v.exact
            .as_ref()
            .map_or_else(|| v.approx.to_decimal(30), format_rational)
    };
    let human = format!(
        "Z(rho_spin, T) = {zs}\nZ(H^1, T) = {zh}\nL(E) = {} and L(rho, s/2)^2 = {} in U = q^-s: {}{}\n\
         at s = {}: L(E, s) = {}, L(rho, s/2)^2 = {}, gap = {}\n",
        proof.lhs,
        proof.rhs,
        if proof.holds { "equal" } else { "DIFFERENT" },
        if proof.vacuous { " (no arithmetic spin structure: formal only)" } else { "" },
        format_rational(&s),
        exact(&values.l_e),
        exact(&values.l_spin_half_sq),
        values.identity_gap().to_decimal(40),
    );
    Ok(Report {
        json: json!({
            "zeta_spin": zs.to_string(),
            "zeta_h1": zh.to_string(),
            "identity_exact": proof.holds,
            "identity": serde_json::to_value(&proof).expect("serializable"),
            "numeric": serde_json::to_value(&values).expect("serializable"),
            "tolerance": "1e-12",
            "numeric_within_tolerance": within,
        }),
        human,
    })
}

/// `q = p^a` with `p` prime.
fn prime_power(q: u64) -> Result<(u64, u32), CliError> {
    let f = factorize(&BigInt::from(q))?;
    match f.factors.as_slice() {
        [(p, a)] => Ok((*p, *a)),
        _ => Err(CliError::domain(
            "curves",
            format!("{q} is not a prime power"),
        )),
    }
}

fn record_json(field: &FiniteField, rec: &CurveRecord) -> Value {
    let mut v = serde_json::to_value(rec).expect("serializable");
    let names: Vec<String> = rec.coeffs.iter().map(|&c| field.format(c)).collect();
    v["coeff_names"] = json!(names);
    v
}

pub fn curves(q: u64, census: bool, find_q14: bool) -> Result<Report, CliError> {
    if !census && !find_q14 {
        return Err(CliError::usage("curves needs --census or --find-q14"));
    }
    let (p, a) = prime_power(q)?;
    if census {
        let free = match p {
            2 => 5,
            3 => 3,
            _ => 2,
        };
        let work = q.checked_pow(free + 1).unwrap_or(u64::MAX);
        if work > CENSUS_WORK_LIMIT {
            return Err(CliError::domain(
                "curves",
                format!("census over F_{q} is too large"),
            ));
        }
        let field = Arc::new(FiniteField::new(p, a)?);
        let map = trace_census(&field);
        let mut human = String::new();
        for rec in map.values() {
            let coeffs: Vec<String> = rec.coeffs.iter().map(|&c| field.format(c)).collect();
            let _ = writeln!(
                human,
                "trace {:>4}  #E = {:>5}  supersingular = {:<5}  [a1,a2,a3,a4,a6] = [{}]",
                rec.trace,
                rec.points,
                rec.supersingular,
                coeffs.join(", ")
            );
        }
        let records: Vec<Value> = map.values().map(|r| record_json(&field, r)).collect();
        Ok(Report {
            json: Value::Array(records),
            human,
        })
    } else {
        if a != 2 {
            return Err(CliError::domain(
                "curves",
                format!("--find-q14 needs q = p^2, got {q}"),
            ));
        }
        let curve = find_q14_curve(p)?;
        let rec = CurveRecord::of(&curve);
        let frob = if p >= 5 {
            Some(verify_frobenius_scalar(&curve)?)
        } else {
            None
        };
        let mut v = record_json(curve.field(), &rec);
        v["frobenius_is_minus_p"] = json!(frob);
        let human = format!(
            "{curve}\n#E = {} = (p+1)^2, trace = {}\nFrobenius^2 = [-{p}] on all points: {}\n",
            rec.points,
            rec.trace,
            frob.map_or("not checked (p < 5)".to_string(), |b| b.to_string())
        );
        Ok(Report { json: v, human })
    }
}

pub fn crystal(p: u64, n: u32, ell: u64) -> Result<Report, CliError> {
    require_prime(p)?;
    if n == 0 {
        return Err(IsogenyError::ZeroExponent.into());
    }
    let class = IsogenyClass::new(p, 2 * n, -2 * p_power_i64(p, n)?)?;
    let cert = has_arithmetic_spin_with_bound(&class, search_bound()?)?;
    let structure = cert.structure().ok_or_else(|| {
        CliError::domain(
            "spin_structure",
            format!("no arithmetic spin structure for p = {p}, n = {n}"),
        )
    })?;
    let lift = spin_lift(&similitude_rep(structure)).ok_or_else(|| {
        CliError::domain("spin_structure", "arithmetic structure without a spin lift")
    })?;
    let real = realizations(&lift, ell)?;
    let mut v = serde_json::to_value(&real).expect("serializable");
    v["p"] = json!(p);
    v["n"] = json!(n);
    let human = format!(
        "l-adic (l = {ell}): Frobenius eigenvalues {} and {}, |z|^2 = {}\n\
         crystalline: phi^2 = {} ({}), v_p(phi^2) = {}, v_p(q) = {}, slope = {}\n",
        real.eigenvalues[0],
        real.eigenvalues[1],
        format_rational(&real.eigen_abs_sq),
        real.delta_p,
        real.phi_description,
        real.v_p_phi_squared,
        real.v_p_q,
        format_rational(&real.normalized_slope),
    );
    Ok(Report { json: v, human })
}
