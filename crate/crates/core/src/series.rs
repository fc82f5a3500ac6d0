//! Truncated exponential generating functions with polynomial coefficients.
//!
//! A `Series` of order `N` stores `a_0..=a_N` for `sum a_n s^n / n!`, where
//! `s` is a formal variable kept apart from the ring indeterminate `t`.
//! Products are binomial convolutions.

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rat, Var};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 16;

/// Row `n` of Pascal's triangle as exact rationals.
pub(crate) fn binomial_row(n: usize) -> Vec<Rat> {
    let mut row = vec![Rat::one()];
    for j in 1..=n {
        let prev = row[j - 1].clone();
        let next = prev * Rat::from_int((n + 1 - j) as i64) * Rat::new(1, j as i64).unwrap();
        row.push(next);
    }
    row
}

pub(crate) fn factorial(n: usize) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, i| acc * Rat::from_int(i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct Series {
    order: usize,
    #[serde(rename = "egf_coeffs")]
    coeffs: Vec<Poly>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    order: usize,
    egf_coeffs: Vec<Poly>,
}

impl TryFrom<RawSeries> for Series {
    type Error = String;

    fn try_from(raw: RawSeries) -> std::result::Result<Self, Self::Error> {
        if raw.egf_coeffs.len() != raw.order + 1 {
            return Err(format!(
                "order {} needs {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.egf_coeffs.len()
            ));
        }
        Ok(Series::from_coeffs(raw.egf_coeffs))
    }
}

impl Series {
    /// Builds a series from EGF coefficients; the order is `coeffs.len() - 1`.
    /// An empty vector gives the zero series of order 0.
    pub fn from_coeffs(mut coeffs: Vec<Poly>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Poly::zero());
        }
        Series {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn zero(order: usize) -> Self {
        Series::from_coeffs(vec![Poly::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Poly::one(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `s` itself (EGF coefficient 1 at index 1).
    pub fn variable(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Poly::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `n! [s^n]`, i.e. the stored EGF coefficient.
    pub fn egf_coefficient(&self, n: usize) -> Result<&Poly> {
        self.coeffs.get(n).ok_or(Error::IndexBeyondOrder {
            index: n,
            order: self.order,
        })
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order);
        Series::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        Series::from_coeffs(
            (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        )
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        Series::from_coeffs(
            (0..=order)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        )
    }

    pub fn scale(&self, c: &Poly) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// EGF (binomial) product `c_n = sum_j C(n, j) a_j b_{n-j}`.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| {
                let binom = binomial_row(n);
                let mut acc = Poly::zero();
                for j in 0..=n {
                    let (a, b) = (&self.coeffs[j], &other.coeffs[n - j]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b).scale(&binom[j]);
                }
                acc
            })
            .collect();
        Series::from_coeffs(coeffs)
    }

    /// Multiplicative inverse. The constant term must be a nonzero rational.
    pub fn reciprocal(&self) -> Result<Series> {
        let inv0 = self.coeffs[0]
            .constant_value()
            .and_then(|c| c.recip())
            .ok_or_else(|| Error::NonUnitSeries(self.coeffs[0].to_string()))?;
        let mut out: Vec<Poly> = Vec::with_capacity(self.order + 1);
        out.push(Poly::constant(inv0.clone()));
        // a_0 b_n = -sum_{j>=1} C(n, j) a_j b_{n-j}
        for n in 1..=self.order {
            let binom = binomial_row(n);
            let mut acc = Poly::zero();
            for j in 1..=n {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[j] * &out[n - j]).scale(&binom[j]);
            }
            out.push(acc.scale(&-&inv0));
        }
        Ok(Series::from_coeffs(out))
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `a^k / k!` for a series with vanishing constant term.
    pub fn shifted_power(&self, k: usize) -> Result<Series> {
        self.require_zero_constant()?;
        let inv = factorial(k).recip().expect("factorial is nonzero");
        Ok(self.pow(k as u32).scale(&Poly::constant(inv)))
    }

    /// `outer(inner(s))` where `inner` has no constant term: both are EGFs, so
    /// the result is `sum_k outer_k inner^k / k!`.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        inner.require_zero_constant()?;
        let order = self.order.min(inner.order);
        let inner = inner.truncate(order);
        let mut acc = Series::zero(order);
        // inner^k / k! has valuation >= k, so terms past `order` vanish.
        let mut power = Series::one(order);
        for k in 0..=order {
            if k > 0 {
                power = power
                    .mul(&inner)
                    .scale(&Poly::constant(Rat::new(1, k as i64).unwrap()));
            }
            if !self.coeffs[k].is_zero() {
                acc = acc.add(&power.scale(&self.coeffs[k]));
            }
        }
        Ok(acc)
    }

    fn require_zero_constant(&self) -> Result<()> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstantTerm(self.coeffs[0].to_string()))
        }
    }

    pub fn map_coeffs<F: Fn(&Poly) -> Poly>(&self, f: F) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Replaces `v` by `q` in every coefficient.
    pub fn substitute(&self, v: Var, q: &Poly) -> Series {
        self.map_coeffs(|c| c.substitute(v, q))
    }
}

/// Degenerate exponential `e_l^a(s) = (1 + l s)^(a / l)`: EGF coefficients
/// are `a (a - l) ... (a - (n-1) l)`.
pub fn deg_exp(exponent: &Poly, order: usize) -> Series {
    let lambda = Poly::lambda();
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Poly::one());
    for n in 1..=order {
        let factor = exponent - &lambda.scale(&Rat::from_int(n as i64 - 1));
        let next = &coeffs[n - 1] * &factor;
        coeffs.push(next);
    }
    Series::from_coeffs(coeffs)
}

/// `(e_l(s) - 1)^k / k!`, whose EGF coefficients are the degenerate Stirling
/// numbers of the second kind.
pub fn stirling_column(k: usize, order: usize) -> Series {
    let shifted = deg_exp(&Poly::one(), order).sub(&Series::one(order));
    shifted
        .shifted_power(k)
        .expect("e_l(s) - 1 has zero constant term")
}

/// `e_l(x (e_l(s) - 1))`, generating function of the fully degenerate Bell polynomials.
pub fn fully_deg_bell_gf(order: usize) -> Series {
    let inner = deg_exp(&Poly::one(), order)
        .sub(&Series::one(order))
        .scale(&Poly::var(Var::X));
    deg_exp(&Poly::one(), order)
        .compose(&inner)
        .expect("inner series has zero constant term")
}

/// `exp(x (e_l(s) - 1))`, generating function of the degenerate Bell polynomials.
pub fn deg_bell_gf(order: usize) -> Series {
    let inner = deg_exp(&Poly::one(), order)
        .sub(&Series::one(order))
        .scale(&Poly::var(Var::X));
    Series::from_coeffs(vec![Poly::one(); order + 1])
        .compose(&inner)
        .expect("inner series has zero constant term")
}

/// `1 / (1 - x (e_l(s) - 1))`, generating function of the degenerate Fubini polynomials.
pub fn deg_fubini_gf(order: usize) -> Series {
    let denom = Series::one(order).sub(
        &deg_exp(&Poly::one(), order)
            .sub(&Series::one(order))
            .scale(&Poly::var(Var::X)),
    );
    denom.reciprocal().expect("constant term is 1")
}

/// `(1 - x (e_l(s) - 1))^(-alpha) e_l^y(s)`.
pub fn two_var_fubini_gf(alpha: u32, order: usize) -> Series {
    deg_fubini_gf(order)
        .pow(alpha)
        .mul(&deg_exp(&Poly::var(Var::Y), order))
}

/// Truncated bivariate EGF `sum a_{j,k} u^j v^k / (j! k!)`, entries `a[j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedSeries {
    grid: Vec<Vec<Poly>>,
}

impl NestedSeries {
    pub fn orders(&self) -> (usize, usize) {
        (self.grid.len() - 1, self.grid[0].len() - 1)
    }

    pub fn entry(&self, j: usize, k: usize) -> &Poly {
        &self.grid[j][k]
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> NestedSeries {
        NestedSeries {
            grid: self
                .grid
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// Both sides of `e_l(u + v) = e_l(u) e_l(v / (1 + l u))` truncated to `(j_max, k_max)`.
///
/// The left side expands `sum_n (1)_{n,l} (u + v)^n / n!` binomially. The
/// right side builds, for each power `v^k`, the `u`-series
/// `(1)_{k,l} e_l(u) (1 + l u)^(-k)` from series primitives.
pub fn nested_exp_splitting(j_max: usize, k_max: usize) -> (NestedSeries, NestedSeries) {
    let n_max = j_max + k_max;
    let unit_ff = deg_exp(&Poly::one(), n_max);

    // (u+v)^n / n! = sum_j u^j v^(n-j) / (j! (n-j)!), so the n-th term lands on
    // cell (j, n-j) with weight n! C(n, j) / n! scaled back to the EGF convention.
    let mut left = vec![vec![Poly::zero(); k_max + 1]; j_max + 1];
    for n in 0..=n_max {
        let binom = binomial_row(n);
        let n_fact_inv = factorial(n).recip().unwrap();
        for j in 0..=n.min(j_max) {
            let k = n - j;
            if k > k_max {
                continue;
            }
            // coefficient of u^j v^k is (1)_n C(n,j) / n!; times j! k! for the EGF entry
            let w = &binom[j] * &n_fact_inv * factorial(j) * factorial(k);
            left[j][k] = &left[j][k] + &unit_ff.coeffs()[n].scale(&w);
        }
    }

    let e_u = deg_exp(&Poly::one(), j_max);
    let one_plus_lu = Series::from_coeffs({
        let mut c = vec![Poly::zero(); j_max + 1];
        c[0] = Poly::one();
        if j_max >= 1 {
            c[1] = Poly::lambda();
        }
        c
    });
    let inv = one_plus_lu.reciprocal().expect("constant term is 1");
    let mut right = vec![vec![Poly::zero(); k_max + 1]; j_max + 1];
    let mut inv_pow = Series::one(j_max);
    for k in 0..=k_max {
        if k > 0 {
            inv_pow = inv_pow.mul(&inv);
        }
        let column = e_u.mul(&inv_pow).scale(&unit_ff.coeffs()[k]);
        for (j, row) in right.iter_mut().enumerate() {
            row[k] = column.coeffs()[j].clone();
        }
    }
    (NestedSeries { grid: left }, NestedSeries { grid: right })
}
