//! Exact checks of the Spivey-type identities over parameter grids.
//!
//! Each identity is evaluated cell by cell. In symbolic mode both sides are
//! compared as polynomials with `l` (and `t` or `x`) free. In rational mode
//! every ingredient is evaluated at a binding point *before* the sums are
//! assembled, so that path exercises evaluation rather than re-checking the
//! symbolic result.
//!
//! Cells are iterated with the outer index (`m`, `alpha` or `k`) outermost and
//! `n` inside it, then binding points in the order given. Cells may be computed
//! in parallel; the report is always identical to a sequential run.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::algebra::{Bindings, Poly, Rat, Var};
use crate::classical;
use crate::sequences::{falling_factorial_deg, rising_factorial, Families, Specialization};
use crate::series::{binomial_row, factorial, nested_exp_splitting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "spivey-eq1")]
    SpiveyEq1,
    #[serde(rename = "kim-kim-eq2")]
    KimKimEq2,
    #[serde(rename = "spivey-poly-eq3")]
    SpiveyPolyEq3,
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "theorem2")]
    Theorem2,
    #[serde(rename = "theorem3")]
    Theorem3,
    #[serde(rename = "theorem3-limit")]
    Theorem3Limit,
    #[serde(rename = "vandermonde-deg")]
    VandermondeDeg,
    #[serde(rename = "exp-splitting")]
    ExpSplitting,
    #[serde(rename = "eq12")]
    Eq12Specialization,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::SpiveyEq1,
        IdentityId::KimKimEq2,
        IdentityId::SpiveyPolyEq3,
        IdentityId::Theorem1,
        IdentityId::Theorem2,
        IdentityId::Theorem3,
        IdentityId::Theorem3Limit,
        IdentityId::VandermondeDeg,
        IdentityId::ExpSplitting,
        IdentityId::Eq12Specialization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::SpiveyEq1 => "spivey-eq1",
            IdentityId::KimKimEq2 => "kim-kim-eq2",
            IdentityId::SpiveyPolyEq3 => "spivey-poly-eq3",
            IdentityId::Theorem1 => "theorem1",
            IdentityId::Theorem2 => "theorem2",
            IdentityId::Theorem3 => "theorem3",
            IdentityId::Theorem3Limit => "theorem3-limit",
            IdentityId::VandermondeDeg => "vandermonde-deg",
            IdentityId::ExpSplitting => "exp-splitting",
            IdentityId::Eq12Specialization => "eq12",
        }
    }

    pub fn from_name(s: &str) -> Option<IdentityId> {
        IdentityId::ALL.into_iter().find(|i| i.name() == s)
    }

    /// Names of the two grid indices, outer one second.
    fn index_names(self) -> (&'static str, &'static str) {
        match self {
            IdentityId::VandermondeDeg => ("n", ""),
            IdentityId::ExpSplitting => ("j", "k"),
            IdentityId::Eq12Specialization => ("n", "alpha"),
            _ => ("n", "m"),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How both sides are compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Each cell is checked once per binding point.
    Rational(Vec<Bindings>),
}

impl Mode {
    /// `l` in {0, 1/2, -1/3, 2} crossed with {1, 2, -1/2} for the polynomial
    /// argument, bound to `t`, `x` and `y` alike.
    pub fn spot_grid() -> Mode {
        let lambdas = [(0, 1), (1, 2), (-1, 3), (2, 1)];
        let args = [(1, 1), (2, 1), (-1, 2)];
        let mut points = Vec::new();
        for (ln, ld) in lambdas {
            for (an, ad) in args {
                let a = Rat::new(an, ad).unwrap();
                points.push(Bindings::from([
                    (Var::Lambda, Rat::new(ln, ld).unwrap()),
                    (Var::X, a.clone()),
                    (Var::Y, a.clone()),
                    (Var::T, a),
                ]));
            }
        }
        Mode::Rational(points)
    }

    fn points(&self) -> Vec<Option<&Bindings>> {
        match self {
            Mode::Symbolic => vec![None],
            Mode::Rational(ps) => ps.iter().map(Some).collect(),
        }
    }
}

/// Deliberate corruptions of a right-hand side, used to show that the
/// harness detects false identities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Theorems 1 and 2 without the `(1)_{k,l}` weight.
    DropUnitFalling,
    /// Theorem 3 with `F^{(k)}(t, k)` in place of `F^{(k)}(t, k - m l)`.
    UnshiftedOrderArgument,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Grid indices by name, e.g. `n` and `m`.
    pub indices: BTreeMap<String, usize>,
    pub bindings: Bindings,
    pub lhs: Poly,
    pub rhs: Poly,
}

impl Serialize for Counterexample {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct BindingsJson<'a>(&'a Counterexample);
        impl Serialize for BindingsJson<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let c = self.0;
                let mut map = serializer.serialize_map(Some(c.indices.len() + c.bindings.len()))?;
                for (name, v) in &c.indices {
                    map.serialize_entry(name, v)?;
                }
                for (v, r) in &c.bindings {
                    map.serialize_entry(v.name(), r)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("bindings", &BindingsJson(self))?;
        map.serialize_entry("lhs", &self.lhs)?;
        map.serialize_entry("rhs", &self.rhs)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Counterexample {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            bindings: BTreeMap<String, serde_json::Value>,
            lhs: Poly,
            rhs: Poly,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut indices = BTreeMap::new();
        let mut bindings = Bindings::new();
        for (name, value) in raw.bindings {
            match (Var::from_name(&name), value) {
                (Ok(v), serde_json::Value::String(s)) => {
                    bindings.insert(v, s.parse().map_err(serde::de::Error::custom)?);
                }
                (Err(_), serde_json::Value::Number(n)) => {
                    let i = n
                        .as_u64()
                        .ok_or_else(|| serde::de::Error::custom("index must be unsigned"))?;
                    indices.insert(name, i as usize);
                }
                (_, other) => {
                    return Err(serde::de::Error::custom(format!(
                        "bad binding {name:?}: {other}"
                    )))
                }
            }
        }
        Ok(Counterexample {
            indices,
            bindings,
            lhs: raw.lhs,
            rhs: raw.rhs,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: IdentityId,
    pub grid_size: usize,
    pub pass: usize,
    pub fail: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn summary(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {}: {}/{} cells",
            self.identity, self.pass, self.grid_size
        );
        if let Some(c) = &self.first_counterexample {
            let idx: Vec<String> = c.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let b: Vec<String> = c.bindings.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let at: Vec<String> = idx.into_iter().chain(b).collect();
            s.push_str(&format!(
                "; first counterexample at {}: lhs = {}, rhs = {}",
                at.join(" "),
                c.lhs,
                c.rhs
            ));
        }
        s
    }
}

/// One grid cell: `(inner, outer)` indices.
type Cell = (usize, usize);

fn run_grid<F>(identity: IdentityId, cells: Vec<Cell>, mode: &Mode, check: F) -> VerifyReport
where
    F: Fn(Cell, Option<&Bindings>) -> (Poly, Poly) + Sync,
{
    let points = mode.points();
    let jobs: Vec<(Cell, Option<&Bindings>)> = cells
        .iter()
        .flat_map(|&c| points.iter().map(move |&p| (c, p)))
        .collect();
    let outcomes: Vec<(Poly, Poly)> = jobs.par_iter().map(|&(c, p)| check(c, p)).collect();
    let (inner_name, outer_name) = identity.index_names();
    let mut report = VerifyReport {
        identity,
        grid_size: jobs.len(),
        pass: 0,
        fail: 0,
        first_counterexample: None,
    };
    for ((cell, point), (lhs, rhs)) in jobs.iter().zip(outcomes) {
        if lhs == rhs {
            report.pass += 1;
            continue;
        }
        report.fail += 1;
        if report.first_counterexample.is_none() {
            let mut indices = BTreeMap::from([(inner_name.to_string(), cell.0)]);
            if !outer_name.is_empty() {
                indices.insert(outer_name.to_string(), cell.1);
            }
            report.first_counterexample = Some(Counterexample {
                indices,
                bindings: point.cloned().unwrap_or_default(),
                lhs,
                rhs,
            });
        }
    }
    report
}

fn square_cells(n_max: usize, m_max: usize) -> Vec<Cell> {
    (0..=m_max)
        .flat_map(|m| (0..=n_max).map(move |n| (n, m)))
        .collect()
}

/// Evaluates `p` at the binding point, if any.
fn at(p: &Poly, point: Option<&Bindings>) -> Poly {
    match point {
        Some(b) => p.eval(b),
        None => p.clone(),
    }
}

/// Instantiates `p` under `subs`. At a binding point the substitution
/// targets are first reduced to rationals so `p` is evaluated directly.
fn instantiate(p: &Poly, subs: &[(Var, Poly)], point: Option<&Bindings>) -> Poly {
    let symbolic = || {
        subs.iter()
            .fold(Specialization::new(), |s, (v, q)| s.set(*v, q.clone()))
            .apply(p)
    };
    let Some(b) = point else {
        return symbolic();
    };
    let mut full = b.clone();
    for (v, q) in subs {
        match q.eval(b).constant_value() {
            Some(c) => {
                full.insert(*v, c);
            }
            None => return symbolic().eval(b),
        }
    }
    p.eval(&full)
}

fn rat(n: usize) -> Rat {
    Rat::from_int(n as i64)
}

/// `k - m l`.
fn shifted_order(k: usize, m: usize) -> Poly {
    &Poly::int(k as i64) - &Poly::lambda().scale(&rat(m))
}

fn families_for(n_max: usize, m_max: usize) -> Families {
    Families::with_two_var_bound(n_max + m_max, n_max, m_max as u32)
}

/// Theorem 1: `Bel_{n+m,l} = sum_{k,l'} (1)_{k,l} S_l(m,k) C(n,l') Bel_{l',l} F^{(k)}_{n-l',l}(-l, k - m l)`,
/// with the fully degenerate Bell numbers taken at `x = 1`.
pub fn check_theorem1(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    check_theorem1_with(n_max, m_max, mode, Mutation::None)
}

fn check_theorem1_with(
    n_max: usize,
    m_max: usize,
    mode: &Mode,
    mutation: Mutation,
) -> VerifyReport {
    let fam = families_for(n_max, m_max);
    let at_one = [(Var::X, Poly::one())];
    let bell_numbers: Vec<Poly> = (0..=n_max + m_max)
        .map(|n| instantiate(&fam.bell_fully_deg(n), &at_one, None))
        .collect();
    run_grid(
        IdentityId::Theorem1,
        square_cells(n_max, m_max),
        mode,
        |(n, m), point| {
            let lhs = at(&bell_numbers[n + m], point);
            let binom = binomial_row(n);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                let weight = if mutation == Mutation::DropUnitFalling {
                    at(fam.stirling(m, k), point)
                } else {
                    &at(fam.unit_falling(k), point) * &at(fam.stirling(m, k), point)
                };
                if weight.is_zero() {
                    continue;
                }
                let subs = [(Var::X, -&Poly::lambda()), (Var::Y, shifted_order(k, m))];
                for l in 0..=n {
                    let f = instantiate(fam.fubini_two_var_alpha(n - l, k as u32), &subs, point);
                    let term = &(&weight * &at(&bell_numbers[l], point)) * &f;
                    rhs = &rhs + &term.scale(&binom[l]);
                }
            }
            (lhs, rhs)
        },
    )
}

/// Theorem 2: the polynomial version of Theorem 1 in the argument `t`, with
/// `F^{(k)}_{n-l,l}(-l t, k - m l)` and an extra `t^k`.
pub fn check_theorem2(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    check_theorem2_with(n_max, m_max, mode, Mutation::None)
}

fn check_theorem2_with(
    n_max: usize,
    m_max: usize,
    mode: &Mode,
    mutation: Mutation,
) -> VerifyReport {
    let fam = families_for(n_max, m_max);
    let t = Poly::var(Var::T);
    let in_t = [(Var::X, t.clone())];
    let bell: Vec<Poly> = (0..=n_max + m_max)
        .map(|n| instantiate(&fam.bell_fully_deg(n), &in_t, None))
        .collect();
    let minus_lambda_t = -&(&Poly::lambda() * &t);
    run_grid(
        IdentityId::Theorem2,
        square_cells(n_max, m_max),
        mode,
        |(n, m), point| {
            let lhs = at(&bell[n + m], point);
            let binom = binomial_row(n);
            let t_at = at(&t, point);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                let mut weight = &at(fam.stirling(m, k), point) * &t_at.pow(k as u32);
                if mutation != Mutation::DropUnitFalling {
                    weight = &weight * &at(fam.unit_falling(k), point);
                }
                if weight.is_zero() {
                    continue;
                }
                let subs = [
                    (Var::X, minus_lambda_t.clone()),
                    (Var::Y, shifted_order(k, m)),
                ];
                for l in 0..=n {
                    let f = instantiate(fam.fubini_two_var_alpha(n - l, k as u32), &subs, point);
                    let term = &(&weight * &f) * &at(&bell[l], point);
                    rhs = &rhs + &term.scale(&binom[l]);
                }
            }
            (lhs, rhs)
        },
    )
}

/// Theorem 3: `F_{n+m,l}(t) = sum k! S_l(m,k) C(n,l') t^k F^{(k)}_{n-l',l}(t, k - m l) F_{l',l}(t)`.
pub fn check_theorem3(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    check_theorem3_with(n_max, m_max, mode, Mutation::None)
}

fn check_theorem3_with(
    n_max: usize,
    m_max: usize,
    mode: &Mode,
    mutation: Mutation,
) -> VerifyReport {
    let fam = families_for(n_max, m_max);
    let t = Poly::var(Var::T);
    let in_t = [(Var::X, t.clone())];
    let fubini: Vec<Poly> = (0..=n_max + m_max)
        .map(|n| instantiate(&fam.fubini_deg(n), &in_t, None))
        .collect();
    run_grid(
        IdentityId::Theorem3,
        square_cells(n_max, m_max),
        mode,
        |(n, m), point| {
            let lhs = at(&fubini[n + m], point);
            let binom = binomial_row(n);
            let t_at = at(&t, point);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                let weight =
                    (&at(fam.stirling(m, k), point) * &t_at.pow(k as u32)).scale(&factorial(k));
                if weight.is_zero() {
                    continue;
                }
                let order_arg = if mutation == Mutation::UnshiftedOrderArgument {
                    Poly::int(k as i64)
                } else {
                    shifted_order(k, m)
                };
                let subs = [(Var::X, t.clone()), (Var::Y, order_arg)];
                for l in 0..=n {
                    let f = instantiate(fam.fubini_two_var_alpha(n - l, k as u32), &subs, point);
                    let term = &(&weight * &f) * &at(&fubini[l], point);
                    rhs = &rhs + &term.scale(&binom[l]);
                }
            }
            (lhs, rhs)
        },
    )
}

/// `phi_{n+m,l}(x) = sum S_l(m,k) C(n,l') x^k (k - m l)_{n-l',l} phi_{l',l}(x)`.
pub fn check_eq2_kim_kim(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    let fam = Families::with_two_var_bound(n_max + m_max, 0, 0);
    let bell: Vec<Poly> = (0..=n_max + m_max).map(|n| fam.bell_deg(n)).collect();
    let x = Poly::var(Var::X);
    run_grid(
        IdentityId::KimKimEq2,
        square_cells(n_max, m_max),
        mode,
        |(n, m), point| {
            let lhs = at(&bell[n + m], point);
            let binom = binomial_row(n);
            let x_at = at(&x, point);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                let weight = &at(fam.stirling(m, k), point) * &x_at.pow(k as u32);
                if weight.is_zero() {
                    continue;
                }
                let base = at(&shifted_order(k, m), point);
                for l in 0..=n {
                    let ff = at(&falling_factorial_deg(&base, n - l), point);
                    let term = &(&weight * &ff) * &at(&bell[l], point);
                    rhs = &rhs + &term.scale(&binom[l]);
                }
            }
            (lhs, rhs)
        },
    )
}

/// `k^(n-l)` with `0^0 = 1`.
fn int_pow(k: usize, e: usize) -> Rat {
    rat(k).pow(e as u32)
}

/// Spivey's Bell number identity with classical values on both sides; the
/// left side comes from the Bell triangle, independent of Stirling numbers.
pub fn check_spivey_eq1(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    let bell = classical::bell_numbers(n_max + m_max);
    let stirling = classical::stirling2_triangle(m_max);
    run_grid(
        IdentityId::SpiveyEq1,
        square_cells(n_max, m_max),
        mode,
        |(n, m), _| {
            let binom = binomial_row(n);
            let mut rhs = Rat::zero();
            for k in 0..=m {
                for l in 0..=n {
                    rhs = rhs + &stirling[m][k] * &binom[l] * int_pow(k, n - l) * &bell[l];
                }
            }
            (Poly::constant(bell[n + m].clone()), Poly::constant(rhs))
        },
    )
}

/// Spivey's recurrence for classical Bell polynomials in `x`.
pub fn check_spivey_poly_eq3(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    let bell = classical::bell_polynomials(n_max + m_max);
    let stirling = classical::stirling2_triangle(m_max);
    let x = Poly::var(Var::X);
    run_grid(
        IdentityId::SpiveyPolyEq3,
        square_cells(n_max, m_max),
        mode,
        |(n, m), point| {
            let binom = binomial_row(n);
            let x_at = at(&x, point);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                for l in 0..=n {
                    let c = &stirling[m][k] * &binom[l] * int_pow(k, n - l);
                    rhs = &rhs + &(&x_at.pow(k as u32) * &at(&bell[l], point)).scale(&c);
                }
            }
            (at(&bell[n + m], point), rhs)
        },
    )
}

/// The `l -> 0` form of Theorem 3 with classical Fubini polynomials.
pub fn check_theorem3_limit(n_max: usize, m_max: usize, mode: &Mode) -> VerifyReport {
    let t = Poly::var(Var::T);
    let fubini: Vec<Poly> = classical::fubini_polynomials(n_max + m_max)
        .iter()
        .map(|p| p.substitute(Var::X, &t))
        .collect();
    let stirling = classical::stirling2_triangle(n_max.max(m_max));
    run_grid(
        IdentityId::Theorem3Limit,
        square_cells(n_max, m_max),
        mode,
        |(n, m), point| {
            let binom = binomial_row(n);
            let t_at = at(&t, point);
            let mut rhs = Poly::zero();
            for k in 0..=m {
                let c = &stirling[m][k] * &factorial(k);
                if c.is_zero() {
                    continue;
                }
                let subs = [(Var::X, t.clone()), (Var::Y, Poly::int(k as i64))];
                for l in 0..=n {
                    let f2 = classical::two_var_fubini(n - l, k as u32, &stirling);
                    let f = instantiate(&f2, &subs, point);
                    let term = &(&t_at.pow(k as u32) * &f) * &at(&fubini[l], point);
                    rhs = &rhs + &term.scale(&(&c * &binom[l]));
                }
            }
            (at(&fubini[n + m], point), rhs)
        },
    )
}

/// `(x + y)_{n,l} = sum_j C(n, j) (x)_{j,l} (y)_{n-j,l}`.
pub fn check_vandermonde_deg(n_max: usize, mode: &Mode) -> VerifyReport {
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);
    let cells = (0..=n_max).map(|n| (n, 0)).collect();
    run_grid(IdentityId::VandermondeDeg, cells, mode, |(n, _), point| {
        let (xa, ya) = (at(&x, point), at(&y, point));
        let lhs = at(&falling_factorial_deg(&(&xa + &ya), n), point);
        let binom = binomial_row(n);
        let rhs = (0..=n)
            .map(|j| {
                let a = at(&falling_factorial_deg(&xa, j), point);
                let b = at(&falling_factorial_deg(&ya, n - j), point);
                (&a * &b).scale(&binom[j])
            })
            .sum();
        (lhs, rhs)
    })
}

/// `e_l(u + v) = e_l(u) e_l(v / (1 + l u))` as truncated bivariate series.
pub fn check_exp_splitting(j_max: usize, k_max: usize, mode: &Mode) -> VerifyReport {
    let (lhs, rhs) = nested_exp_splitting(j_max, k_max);
    let cells = (0..=k_max)
        .flat_map(|k| (0..=j_max).map(move |j| (j, k)))
        .collect();
    run_grid(IdentityId::ExpSplitting, cells, mode, |(j, k), point| {
        (at(lhs.entry(j, k), point), at(rhs.entry(j, k), point))
    })
}

/// `F^{(alpha)}_{n,l}(0, y) = (y)_{n,l}` together with
/// `F^{(alpha)}_{n,l}(x, 0) = sum_k <alpha>_k S_l(n,k) x^k`. A cell passes
/// only if both hold; the counterexample shows the first that fails.
pub fn check_eq12(n_max: usize, alpha_max: usize, mode: &Mode) -> VerifyReport {
    let fam = Families::new(n_max, alpha_max as u32);
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);
    let cells = (0..=alpha_max)
        .flat_map(|a| (0..=n_max).map(move |n| (n, a)))
        .collect();
    run_grid(
        IdentityId::Eq12Specialization,
        cells,
        mode,
        |(n, alpha), point| {
            let f = fam.fubini_two_var_alpha(n, alpha as u32);
            let at_x0 = instantiate(f, &[(Var::X, Poly::zero())], point);
            let want_x0 = at(&falling_factorial_deg(&at(&y, point), n), point);
            if at_x0 != want_x0 {
                return (at_x0, want_x0);
            }
            let at_y0 = instantiate(f, &[(Var::Y, Poly::zero())], point);
            let x_at = at(&x, point);
            let want_y0 = (0..=n)
                .map(|k| {
                    let w = rising_factorial(&Poly::int(alpha as i64), k);
                    &(&w * &at(fam.stirling(n, k), point)) * &x_at.pow(k as u32)
                })
                .sum();
            (at_y0, want_y0)
        },
    )
}

/// Runs `id` over `0..=a` by `0..=b`. The second bound is `m` for the
/// Spivey-type identities, `alpha` for eq12, `k` for the splitting grid and
/// unused for vandermonde-deg.
pub fn check(id: IdentityId, a: usize, b: usize, mode: &Mode) -> VerifyReport {
    check_with_mutation(id, a, b, mode, Mutation::None)
}

/// As `check`, with a corrupted right side where `mutation` applies to `id`.
pub fn check_with_mutation(
    id: IdentityId,
    a: usize,
    b: usize,
    mode: &Mode,
    mutation: Mutation,
) -> VerifyReport {
    match id {
        IdentityId::SpiveyEq1 => check_spivey_eq1(a, b, mode),
        IdentityId::KimKimEq2 => check_eq2_kim_kim(a, b, mode),
        IdentityId::SpiveyPolyEq3 => check_spivey_poly_eq3(a, b, mode),
        IdentityId::Theorem1 => check_theorem1_with(a, b, mode, mutation),
        IdentityId::Theorem2 => check_theorem2_with(a, b, mode, mutation),
        IdentityId::Theorem3 => check_theorem3_with(a, b, mode, mutation),
        IdentityId::Theorem3Limit => check_theorem3_limit(a, b, mode),
        IdentityId::VandermondeDeg => check_vandermonde_deg(a, mode),
        IdentityId::ExpSplitting => check_exp_splitting(a, b, mode),
        IdentityId::Eq12Specialization => check_eq12(a, b, mode),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::bell_fully_deg;

    fn l() -> Poly {
        Poly::lambda()
    }

    fn symbolic_pair(report: &VerifyReport) {
        assert!(report.ok(), "{}", report.summary());
        assert!(report.first_counterexample.is_none());
        assert_eq!(report.pass + report.fail, report.grid_size);
    }

    #[test]
    fn theorem1_small_cells() {
        let fam = families_for(1, 1);
        let lhs = fam.bell_fully_deg(2).eval(&[(Var::X, Rat::one())].into());
        assert_eq!(lhs, Poly::int(2) - Poly::int(2) * l());
        let r = check_theorem1(0, 0, &Mode::Symbolic);
        assert_eq!((r.grid_size, r.pass), (1, 1));
        symbolic_pair(&check_theorem1(1, 1, &Mode::Symbolic));
    }

    #[test]
    fn theorem1_at_zero_lambda_is_spivey() {
        let zero = Mode::Rational(vec![[(Var::Lambda, Rat::zero())].into()]);
        symbolic_pair(&check_theorem1(6, 6, &zero));
        symbolic_pair(&check_spivey_eq1(6, 6, &Mode::Symbolic));
    }

    #[test]
    fn theorem2_base_and_reductions() {
        let r = check_theorem2(0, 0, &Mode::Symbolic);
        assert_eq!((r.grid_size, r.pass), (1, 1));
        symbolic_pair(&check_theorem2(3, 3, &Mode::Symbolic));
        let bell2 = bell_fully_deg(2).substitute(Var::X, &Poly::var(Var::T));
        assert!(bell2.mentions(Var::T) && !bell2.mentions(Var::X));
    }

    #[test]
    fn theorem3_small_cells() {
        symbolic_pair(&check_theorem3(0, 1, &Mode::Symbolic));
        symbolic_pair(&check_theorem3(3, 3, &Mode::Symbolic));
        symbolic_pair(&check_theorem3_limit(4, 4, &Mode::Symbolic));
    }

    #[test]
    fn eq2_and_eq3() {
        symbolic_pair(&check_eq2_kim_kim(3, 3, &Mode::Symbolic));
        symbolic_pair(&check_spivey_poly_eq3(4, 4, &Mode::Symbolic));
        let classical_point =
            Mode::Rational(vec![
                [(Var::Lambda, Rat::zero()), (Var::X, Rat::one())].into()
            ]);
        symbolic_pair(&check_eq2_kim_kim(4, 4, &classical_point));
    }

    #[test]
    fn spot_grid_runs_every_point() {
        let r = check_theorem3(2, 2, &Mode::spot_grid());
        assert_eq!(r.grid_size, 9 * 12);
        symbolic_pair(&r);
    }

    #[test]
    fn vandermonde_and_splitting() {
        symbolic_pair(&check_vandermonde_deg(6, &Mode::Symbolic));
        let r = check_vandermonde_deg(0, &Mode::Symbolic);
        assert_eq!(r.grid_size, 1);
        symbolic_pair(&check_exp_splitting(4, 4, &Mode::Symbolic));
        let r = check_exp_splitting(0, 0, &Mode::Symbolic);
        assert_eq!(r.grid_size, 1);
    }

    #[test]
    fn eq12_cells() {
        symbolic_pair(&check_eq12(4, 3, &Mode::Symbolic));
    }

    #[test]
    fn mutation_is_detected() {
        let r = check_with_mutation(
            IdentityId::Theorem1,
            2,
            2,
            &Mode::Symbolic,
            Mutation::DropUnitFalling,
        );
        assert!(r.fail > 0);
        let c = r.first_counterexample.as_ref().unwrap();
        assert_ne!(c.lhs, c.rhs);
        let r = check_with_mutation(
            IdentityId::Theorem3,
            2,
            2,
            &Mode::Symbolic,
            Mutation::UnshiftedOrderArgument,
        );
        assert!(r.fail > 0);
    }

    #[test]
    fn report_json() {
        let r = check_with_mutation(
            IdentityId::Theorem1,
            1,
            2,
            &Mode::Symbolic,
            Mutation::DropUnitFalling,
        );
        let js = r.to_json();
        assert!(
            js.starts_with(r#"{"identity":"theorem1","grid_size":6,"#),
            "{js}"
        );
        let back: VerifyReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        let ok = check_theorem1(0, 0, &Mode::Symbolic);
        assert_eq!(
            ok.to_json(),
            r#"{"identity":"theorem1","grid_size":1,"pass":1,"fail":0,"first_counterexample":null}"#
        );
    }

    #[test]
    fn identity_names_roundtrip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::from_name(id.name()), Some(id));
            let js = serde_json::to_string(&id).unwrap();
            assert_eq!(js, format!("\"{}\"", id.name()));
        }
    }
}
