//! Classical (non-degenerate) families computed by their own recurrences.
//!
//! Nothing here touches the degenerate code paths; these values serve as the
//! reference when checking `l = 0` specializations.

use crate::algebra::{Poly, Rat, Var};
use crate::series::binomial_row;

/// Stirling numbers of the second kind, `S(n+1, k) = S(n, k-1) + k S(n, k)`.
pub fn stirling2_triangle(n_max: usize) -> Vec<Vec<Rat>> {
    let mut rows = vec![vec![Rat::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let mut row = vec![Rat::zero(); n + 2];
        for k in 1..=n + 1 {
            let left = prev[k - 1].clone();
            let stay = prev
                .get(k)
                .map(|s| s * &Rat::from_int(k as i64))
                .unwrap_or_else(Rat::zero);
            row[k] = left + stay;
        }
        rows.push(row);
    }
    rows
}

/// Bell numbers from the Bell (Aitken) triangle.
pub fn bell_numbers(n_max: usize) -> Vec<Rat> {
    let mut out = vec![Rat::one()];
    let mut row = vec![Rat::one()];
    for _ in 0..n_max {
        let mut next = vec![row.last().cloned().unwrap()];
        for v in &row {
            let s = next.last().unwrap() + v;
            next.push(s);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Ordered Bell numbers, `a_n = sum_{k=1}^{n} C(n, k) a_{n-k}`.
pub fn ordered_bell_numbers(n_max: usize) -> Vec<Rat> {
    let mut a = vec![Rat::one()];
    for n in 1..=n_max {
        let binom = binomial_row(n);
        let s = (1..=n).fold(Rat::zero(), |acc, k| acc + &binom[k] * &a[n - k]);
        a.push(s);
    }
    a
}

/// Touchard polynomials via `phi_{n+1}(x) = x sum_k C(n, k) phi_k(x)`.
pub fn bell_polynomials(n_max: usize) -> Vec<Poly> {
    let x = Poly::var(Var::X);
    let mut out = vec![Poly::one()];
    for n in 0..n_max {
        let binom = binomial_row(n);
        let s: Poly = (0..=n).map(|k| out[k].scale(&binom[k])).sum();
        out.push(&x * &s);
    }
    out
}

/// Fubini polynomials via `F_n(x) = x sum_{j=1}^{n} C(n, j) F_{n-j}(x)`.
pub fn fubini_polynomials(n_max: usize) -> Vec<Poly> {
    let x = Poly::var(Var::X);
    let mut out = vec![Poly::one()];
    for n in 1..=n_max {
        let binom = binomial_row(n);
        let s: Poly = (1..=n).map(|j| out[n - j].scale(&binom[j])).sum();
        out.push(&x * &s);
    }
    out
}

/// Two-variable Fubini polynomials of integer order `alpha`:
/// `sum_j C(n, j) [sum_k <alpha>_k S(j, k) x^k] y^(n-j)`.
pub fn two_var_fubini(n: usize, alpha: u32, stirling: &[Vec<Rat>]) -> Poly {
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);
    let binom = binomial_row(n);
    (0..=n)
        .map(|j| {
            let inner: Poly = (0..=j)
                .map(|k| {
                    let rising = (0..k as i64)
                        .fold(Rat::one(), |acc, i| acc * Rat::from_int(alpha as i64 + i));
                    x.pow(k as u32).scale(&(rising * &stirling[j][k]))
                })
                .sum();
            (&inner * &y.pow((n - j) as u32)).scale(&binom[j])
        })
        .sum()
}
