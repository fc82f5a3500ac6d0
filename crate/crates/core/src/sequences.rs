//! Degenerate Stirling, Bell and Fubini families as exact polynomials.
//!
//! The fast paths use the triangular Stirling recurrence
//! `S(n+1, k) = S(n, k-1) + (k - n l) S(n, k)`, obtained from
//! `(x)_{n+1,l} = (x - n l)(x)_{n,l}` and `x (x)_k = (x)_{k+1} + k (x)_k`.
//! `stirling2_deg_via_basis` and the generating functions in `series` are the
//! independent routes used to cross-check it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bindings, Poly, Rat, Var};
use crate::classical;
use crate::error::{Error, Result};
use crate::series::{self, binomial_row, factorial};

/// `base (base - l) ... (base - (n-1) l)`.
pub fn falling_factorial_deg(base: &Poly, n: usize) -> Poly {
    let lambda = Poly::lambda();
    (0..n).fold(Poly::one(), |acc, i| {
        &acc * &(base - &lambda.scale(&Rat::from_int(i as i64)))
    })
}

/// `base (base - 1) ... (base - n + 1)`.
pub fn falling_factorial_classical(base: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, i| &acc * &(base - &Poly::int(i as i64)))
}

/// `base (base + 1) ... (base + n - 1)`.
pub fn rising_factorial(base: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, i| &acc * &(base + &Poly::int(i as i64)))
}

/// Rows `0..=n_max` of the degenerate Stirling triangle by recurrence.
pub fn stirling2_deg_triangle(n_max: usize) -> Vec<Vec<Poly>> {
    let lambda = Poly::lambda();
    let mut rows = vec![vec![Poly::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let shift = lambda.scale(&Rat::from_int(n as i64));
        let mut row = vec![Poly::zero(); n + 2];
        for k in 1..=n + 1 {
            let mut v = prev[k - 1].clone();
            if let Some(s) = prev.get(k) {
                v = &v + &(&(&Poly::int(k as i64) - &shift) * s);
            }
            row[k] = v;
        }
        rows.push(row);
    }
    rows
}

/// Single degenerate Stirling number; zero outside `0 <= k <= n`.
pub fn stirling2_deg(n: usize, k: usize) -> Poly {
    if k > n {
        return Poly::zero();
    }
    stirling2_deg_triangle(n).swap_remove(n).swap_remove(k)
}

/// Expands `(x)_{n,l}` in the basis `(x)_k` by peeling off leading `x`-degrees.
fn stirling2_basis_rows(n_max: usize) -> Vec<Vec<Poly>> {
    let x = Poly::var(Var::X);
    let basis: Vec<Poly> = (0..=n_max)
        .map(|k| falling_factorial_classical(&x, k))
        .collect();
    (0..=n_max)
        .map(|n| {
            let mut rest = falling_factorial_deg(&x, n);
            let mut row = vec![Poly::zero(); n + 1];
            for k in (0..=n).rev() {
                let lead = rest.coefficient_of(Var::X, k as u32);
                rest = &rest - &(&lead * &basis[k]);
                row[k] = lead;
            }
            debug_assert!(rest.is_zero());
            row
        })
        .collect()
}

fn stirling2_series_rows(n_max: usize) -> Vec<Vec<Poly>> {
    let columns: Vec<series::Series> = (0..=n_max)
        .map(|k| series::stirling_column(k, n_max))
        .collect();
    (0..=n_max)
        .map(|n| (0..=n).map(|k| columns[k].coeffs()[n].clone()).collect())
        .collect()
}

pub fn stirling2_deg_via_basis(n_max: usize) -> SeqTable {
    SeqTable::triangle(
        SeqKind::DegStirling2,
        Provenance::ClosedForm,
        stirling2_basis_rows(n_max),
    )
}

/// Precomputed degenerate families up to fixed bounds. Immutable once built,
/// so it can be shared across threads.
#[derive(Clone, Debug)]
pub struct Families {
    n_max: usize,
    alpha_max: u32,
    stirling: Vec<Vec<Poly>>,
    unit_falling: Vec<Poly>,
    two_var: Vec<Vec<Poly>>,
}

impl Families {
    /// Families with index `n <= n_max` and order `alpha <= alpha_max`.
    pub fn new(n_max: usize, alpha_max: u32) -> Self {
        Families::with_two_var_bound(n_max, n_max, alpha_max)
    }

    /// Like `new`, but two-variable Fubini polynomials only up to index
    /// `two_var_n_max` (clamped to `n_max`).
    pub fn with_two_var_bound(n_max: usize, two_var_n_max: usize, alpha_max: u32) -> Self {
        let two_n = two_var_n_max.min(n_max);
        let stirling = stirling2_deg_triangle(n_max);
        let one = Poly::one();
        let unit_falling: Vec<Poly> = (0..=n_max)
            .map(|k| falling_factorial_deg(&one, k))
            .collect();
        let y = Poly::var(Var::Y);
        let y_falling: Vec<Poly> = (0..=two_n).map(|j| falling_factorial_deg(&y, j)).collect();
        let x = Poly::var(Var::X);
        let two_var = (0..=alpha_max)
            .map(|alpha| {
                let rising: Vec<Rat> = (0..=two_n)
                    .map(|k| {
                        rising_factorial(&Poly::int(alpha as i64), k)
                            .constant_value()
                            .unwrap()
                    })
                    .collect();
                // F^{(alpha)}(x, 0) by index
                let at_y0: Vec<Poly> = (0..=two_n)
                    .map(|j| {
                        (0..=j)
                            .map(|k| (&stirling[j][k] * &x.pow(k as u32)).scale(&rising[k]))
                            .sum()
                    })
                    .collect();
                (0..=two_n)
                    .map(|n| {
                        let binom = binomial_row(n);
                        (0..=n)
                            .map(|j| (&at_y0[j] * &y_falling[n - j]).scale(&binom[j]))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Families {
            n_max,
            alpha_max,
            stirling,
            unit_falling,
            two_var,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn alpha_max(&self) -> u32 {
        self.alpha_max
    }

    pub fn stirling(&self, n: usize, k: usize) -> &Poly {
        static ZERO: std::sync::OnceLock<Poly> = std::sync::OnceLock::new();
        self.stirling[n]
            .get(k)
            .unwrap_or_else(|| ZERO.get_or_init(Poly::zero))
    }

    /// `(1)_{k,l}`.
    pub fn unit_falling(&self, k: usize) -> &Poly {
        &self.unit_falling[k]
    }

    pub fn bell_deg(&self, n: usize) -> Poly {
        let x = Poly::var(Var::X);
        (0..=n)
            .map(|k| &self.stirling[n][k] * &x.pow(k as u32))
            .sum()
    }

    pub fn bell_fully_deg(&self, n: usize) -> Poly {
        let x = Poly::var(Var::X);
        (0..=n)
            .map(|k| &(&self.stirling[n][k] * &self.unit_falling[k]) * &x.pow(k as u32))
            .sum()
    }

    pub fn fubini_deg(&self, n: usize) -> Poly {
        let x = Poly::var(Var::X);
        (0..=n)
            .map(|k| (&self.stirling[n][k] * &x.pow(k as u32)).scale(&factorial(k)))
            .sum()
    }

    pub fn fubini_two_var_alpha(&self, n: usize, alpha: u32) -> &Poly {
        &self.two_var[alpha as usize][n]
    }
}

pub fn bell_deg(n: usize) -> Poly {
    Families::new(n, 0).bell_deg(n)
}

pub fn bell_fully_deg(n: usize) -> Poly {
    Families::new(n, 0).bell_fully_deg(n)
}

pub fn fubini_deg(n: usize) -> Poly {
    Families::new(n, 0).fubini_deg(n)
}

pub fn fubini_two_var_alpha(n: usize, alpha: u32) -> Poly {
    Families::new(n, alpha)
        .fubini_two_var_alpha(n, alpha)
        .clone()
}

/// A point in a specialization: either leave the variable free or bind it to
/// a polynomial (a rational constant being the common case).
#[derive(Clone, Debug, Default)]
pub struct Specialization {
    subs: Vec<(Var, Poly)>,
}

impl Specialization {
    pub fn new() -> Self {
        Specialization::default()
    }

    pub fn set(mut self, v: Var, value: impl Into<Poly>) -> Self {
        self.subs.retain(|(w, _)| *w != v);
        self.subs.push((v, value.into()));
        self
    }

    pub fn from_bindings(b: &Bindings) -> Self {
        b.iter()
            .fold(Specialization::new(), |s, (v, r)| s.set(*v, r.clone()))
    }

    /// Applies all substitutions simultaneously: replacement polynomials may
    /// mention bound variables without being re-substituted.
    pub fn apply(&self, p: &Poly) -> Poly {
        if self.subs.is_empty() {
            return p.clone();
        }
        let rational: Bindings = self
            .subs
            .iter()
            .filter_map(|(v, q)| q.constant_value().map(|c| (*v, c)))
            .collect();
        if rational.len() == self.subs.len() {
            return p.eval(&rational);
        }
        // Substitute in an order where no replacement mentions a variable
        // still waiting to be replaced. Cyclic requests are not supported.
        let mut pending: Vec<&(Var, Poly)> = self.subs.iter().collect();
        let mut out = p.clone();
        while !pending.is_empty() {
            let idx = pending
                .iter()
                .position(|(v, q)| !pending.iter().any(|(w, _)| w != v && q.mentions(*w)))
                .unwrap_or(0);
            let (v, q) = pending.remove(idx);
            out = out.substitute(*v, q);
        }
        out
    }
}

/// Uniform wrapper used to instantiate theorem terms.
pub fn specialize(p: &Poly, spec: &Specialization) -> Poly {
    spec.apply(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeqKind {
    DegStirling2,
    DegBell,
    FullyDegBell,
    DegFubini,
    TwoVarDegFubini,
    FallingFactorial,
    RisingFactorial,
    ClassicalStirling2,
    ClassicalBell,
    ClassicalFubini,
}

impl SeqKind {
    pub const ALL: [SeqKind; 10] = [
        SeqKind::DegStirling2,
        SeqKind::DegBell,
        SeqKind::FullyDegBell,
        SeqKind::DegFubini,
        SeqKind::TwoVarDegFubini,
        SeqKind::FallingFactorial,
        SeqKind::RisingFactorial,
        SeqKind::ClassicalStirling2,
        SeqKind::ClassicalBell,
        SeqKind::ClassicalFubini,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeqKind::DegStirling2 => "deg-stirling2",
            SeqKind::DegBell => "deg-bell",
            SeqKind::FullyDegBell => "fully-deg-bell",
            SeqKind::DegFubini => "deg-fubini",
            SeqKind::TwoVarDegFubini => "two-var-deg-fubini",
            SeqKind::FallingFactorial => "falling-factorial",
            SeqKind::RisingFactorial => "rising-factorial",
            SeqKind::ClassicalStirling2 => "classical-stirling2",
            SeqKind::ClassicalBell => "classical-bell",
            SeqKind::ClassicalFubini => "classical-fubini",
        }
    }

    pub fn from_name(s: &str) -> Option<SeqKind> {
        SeqKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Whether values are indexed by `(n, k)` rather than `n` alone.
    pub fn is_two_index(self) -> bool {
        matches!(
            self,
            SeqKind::DegStirling2 | SeqKind::TwoVarDegFubini | SeqKind::ClassicalStirling2
        )
    }

    /// The classical family a degenerate kind reduces to at `l = 0`.
    pub fn classical_limit(self) -> Option<SeqKind> {
        match self {
            SeqKind::DegStirling2 => Some(SeqKind::ClassicalStirling2),
            SeqKind::DegBell | SeqKind::FullyDegBell => Some(SeqKind::ClassicalBell),
            SeqKind::DegFubini => Some(SeqKind::ClassicalFubini),
            SeqKind::TwoVarDegFubini | SeqKind::FallingFactorial => Some(self),
            _ => None,
        }
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Recurrence,
    ClosedForm,
    SeriesOracle,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Recurrence => "recurrence",
            Provenance::ClosedForm => "closed-form",
            Provenance::SeriesOracle => "series-oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Provenance> {
        [
            Provenance::Recurrence,
            Provenance::ClosedForm,
            Provenance::SeriesOracle,
        ]
        .into_iter()
        .find(|p| p.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableBounds {
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_max: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqEntry {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqTable {
    pub kind: SeqKind,
    pub bounds: TableBounds,
    pub provenance: Provenance,
    pub values: Vec<SeqEntry>,
}

/// Default order bound for `two-var-deg-fubini` tables when none is given.
pub const DEFAULT_ALPHA_MAX: usize = 4;

impl SeqTable {
    fn triangle(kind: SeqKind, provenance: Provenance, rows: Vec<Vec<Poly>>) -> SeqTable {
        let n_max = rows.len() - 1;
        let values = rows
            .into_iter()
            .enumerate()
            .flat_map(|(n, row)| {
                row.into_iter().enumerate().map(move |(k, poly)| SeqEntry {
                    n,
                    k: Some(k),
                    poly,
                })
            })
            .collect();
        SeqTable {
            kind,
            bounds: TableBounds {
                n_max,
                k_max: Some(n_max),
            },
            provenance,
            values,
        }
    }

    fn linear(kind: SeqKind, provenance: Provenance, values: Vec<Poly>) -> SeqTable {
        let n_max = values.len() - 1;
        SeqTable {
            kind,
            bounds: TableBounds { n_max, k_max: None },
            provenance,
            values: values
                .into_iter()
                .enumerate()
                .map(|(n, poly)| SeqEntry { n, k: None, poly })
                .collect(),
        }
    }

    /// Builds a table with the requested method, or the kind's default.
    ///
    /// `k_max` is the order bound `alpha` for `two-var-deg-fubini` and is
    /// otherwise ignored.
    pub fn build(
        kind: SeqKind,
        n_max: usize,
        k_max: Option<usize>,
        method: Option<Provenance>,
    ) -> Result<SeqTable> {
        use Provenance::*;
        use SeqKind::*;
        let default = match kind {
            DegStirling2 | ClassicalStirling2 | ClassicalBell | ClassicalFubini => Recurrence,
            _ => ClosedForm,
        };
        let method = method.unwrap_or(default);
        let unsupported = || Error::UnsupportedMethod {
            kind: kind.name(),
            method: method.name(),
        };
        let x = Poly::var(Var::X);
        let table = match (kind, method) {
            (DegStirling2, Recurrence) => {
                SeqTable::triangle(kind, method, stirling2_deg_triangle(n_max))
            }
            (DegStirling2, ClosedForm) => stirling2_deg_via_basis(n_max),
            (DegStirling2, SeriesOracle) => {
                SeqTable::triangle(kind, method, stirling2_series_rows(n_max))
            }
            (DegBell | FullyDegBell | DegFubini, ClosedForm) => {
                let fam = Families::new(n_max, 0);
                let vals = (0..=n_max)
                    .map(|n| match kind {
                        DegBell => fam.bell_deg(n),
                        FullyDegBell => fam.bell_fully_deg(n),
                        _ => fam.fubini_deg(n),
                    })
                    .collect();
                SeqTable::linear(kind, method, vals)
            }
            (DegBell | FullyDegBell | DegFubini, SeriesOracle) => {
                let gf = match kind {
                    DegBell => series::deg_bell_gf(n_max),
                    FullyDegBell => series::fully_deg_bell_gf(n_max),
                    _ => series::deg_fubini_gf(n_max),
                };
                SeqTable::linear(kind, method, gf.coeffs().to_vec())
            }
            (TwoVarDegFubini, ClosedForm | SeriesOracle) => {
                let alpha_max = k_max.unwrap_or(DEFAULT_ALPHA_MAX);
                let fam = (method == ClosedForm).then(|| Families::new(n_max, alpha_max as u32));
                let mut values = Vec::new();
                for alpha in 0..=alpha_max {
                    let column: Vec<Poly> = match &fam {
                        Some(f) => (0..=n_max)
                            .map(|n| f.fubini_two_var_alpha(n, alpha as u32).clone())
                            .collect(),
                        None => series::two_var_fubini_gf(alpha as u32, n_max)
                            .coeffs()
                            .to_vec(),
                    };
                    values.extend(column.into_iter().enumerate().map(|(n, poly)| SeqEntry {
                        n,
                        k: Some(alpha),
                        poly,
                    }));
                }
                values.sort_by_key(|e| (e.n, e.k));
                SeqTable {
                    kind,
                    bounds: TableBounds {
                        n_max,
                        k_max: Some(alpha_max),
                    },
                    provenance: method,
                    values,
                }
            }
            (FallingFactorial, ClosedForm) => SeqTable::linear(
                kind,
                method,
                (0..=n_max).map(|n| falling_factorial_deg(&x, n)).collect(),
            ),
            (FallingFactorial, SeriesOracle) => {
                SeqTable::linear(kind, method, series::deg_exp(&x, n_max).coeffs().to_vec())
            }
            (RisingFactorial, ClosedForm) => SeqTable::linear(
                kind,
                method,
                (0..=n_max).map(|n| rising_factorial(&x, n)).collect(),
            ),
            (ClassicalStirling2, Recurrence) => SeqTable::triangle(
                kind,
                method,
                classical::stirling2_triangle(n_max)
                    .into_iter()
                    .map(|row| row.into_iter().map(Poly::constant).collect())
                    .collect(),
            ),
            (ClassicalBell, Recurrence) => {
                SeqTable::linear(kind, method, classical::bell_polynomials(n_max))
            }
            (ClassicalFubini, Recurrence) => {
                SeqTable::linear(kind, method, classical::fubini_polynomials(n_max))
            }
            _ => return Err(unsupported()),
        };
        Ok(table)
    }

    /// Evaluates every entry under `bindings`.
    pub fn with_bindings(&self, bindings: &Bindings) -> SeqTable {
        let mut out = self.clone();
        for e in &mut out.values {
            e.poly = e.poly.eval(bindings);
        }
        out
    }

    pub fn get(&self, n: usize, k: Option<usize>) -> Option<&Poly> {
        self.values
            .iter()
            .find(|e| e.n == n && e.k == k)
            .map(|e| &e.poly)
    }

    /// Entries grouped by `n`, in index order.
    pub fn rows(&self) -> Vec<Vec<&SeqEntry>> {
        let mut rows: Vec<Vec<&SeqEntry>> = vec![Vec::new(); self.bounds.n_max + 1];
        for e in &self.values {
            rows[e.n].push(e);
        }
        rows
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization cannot fail")
    }

    /// `n,k,poly` (or `n,poly` for one-index kinds) with human-readable polynomials.
    pub fn to_csv(&self) -> String {
        let two = self.kind.is_two_index();
        let mut out = String::from(if two { "n,k,poly\n" } else { "n,poly\n" });
        for e in &self.values {
            match e.k {
                Some(k) if two => out.push_str(&format!("{},{},{}\n", e.n, k, e.poly)),
                _ => out.push_str(&format!("{},{}\n", e.n, e.poly)),
            }
        }
        out
    }
}

/// One compared entry of a `l = 0` limit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitRow {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub degenerate: Poly,
    pub at_lambda_zero: Poly,
    pub classical: Poly,
    pub matches: bool,
}

/// Pairs each degenerate entry's `l = 0` specialization with the
/// independently computed classical value.
pub fn limit_rows(kind: SeqKind, n_max: usize, k_max: Option<usize>) -> Result<Vec<LimitRow>> {
    let classical_kind = kind
        .classical_limit()
        .ok_or(Error::NoClassicalLimit(kind.name()))?;
    let deg = SeqTable::build(kind, n_max, k_max, None)?;
    let zero: Bindings = [(Var::Lambda, Rat::zero())].into();
    let lookup: Box<dyn Fn(usize, Option<usize>) -> Poly> = match kind {
        SeqKind::TwoVarDegFubini => {
            let stirling = classical::stirling2_triangle(n_max);
            Box::new(move |n, k| classical::two_var_fubini(n, k.unwrap_or(0) as u32, &stirling))
        }
        SeqKind::FallingFactorial => Box::new(|n, _| Poly::var(Var::X).pow(n as u32)),
        _ => {
            let table = SeqTable::build(classical_kind, n_max, k_max, None)?;
            Box::new(move |n, k| table.get(n, k).cloned().unwrap_or_else(Poly::zero))
        }
    };
    Ok(deg
        .values
        .iter()
        .map(|e| {
            let at_zero = e.poly.eval(&zero);
            let classical = lookup(e.n, e.k);
            LimitRow {
                n: e.n,
                k: e.k,
                degenerate: e.poly.clone(),
                matches: at_zero == classical,
                at_lambda_zero: at_zero,
                classical,
            }
        })
        .collect())
}
