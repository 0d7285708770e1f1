//! The worst-case polynomial family
//!
//! ```text
//! F_n(x) = Σ_{i=1..n} 2^{i-1}·α_i(x) − β_i(x)
//! α_i    = x_i + (1 − 2x_i)·α_{i+1},   α_{n+1} = 0
//! β_i    = 2^i·(x_i − x_i²)·(1 − x_{i−1} + Σ_{j=1..i−2} x_j),   x_0 = 1
//! ```
//!
//! Every evaluation is generic over [`Scalar`], so the same recursion yields
//! values (rationals), partials (dual numbers), line restrictions (univariate
//! polynomials) and the expanded form (multivariate polynomials).

use num_traits::{One, Zero};

use super::{ObjectiveError, ObjectiveOracle};
use crate::boxprog::AxisDirection;
use crate::exact::{is_zero_or_one, pow2, CheckedInt, DualNumber, MultiPoly, Rational, Scalar, UniPoly};

fn konst<S: Scalar>(like: &S, c: Rational) -> S {
    like.constant_like(c)
}

/// `[α_1, …, α_{n+1}]`, computed bottom-up in one pass.
pub fn alphas<S: Scalar>(x: &[S]) -> Vec<S> {
    let n = x.len();
    assert!(n >= 1, "F_n needs n >= 1");
    let one = konst(&x[0], Rational::one());
    let two = konst(&x[0], Rational::from_integer(2.into()));
    let mut out = vec![konst(&x[0], Rational::zero()); n + 1];
    for i in (0..n).rev() {
        let xi = x[i].clone();
        out[i] = xi.clone() + (one.clone() - two.clone() * xi) * out[i + 1].clone();
    }
    out
}

/// `α_{n,i}(x)` for `1 <= i <= n + 1`.
pub fn alpha<S: Scalar>(i: usize, x: &[S]) -> S {
    assert!((1..=x.len() + 1).contains(&i), "alpha index out of range");
    alphas(x).swap_remove(i - 1)
}

/// `β_{n,i}(x)` for `1 <= i <= n`, with the `x_0 = 1` convention.
pub fn beta<S: Scalar>(i: usize, x: &[S]) -> S {
    assert!((1..=x.len()).contains(&i), "beta index out of range");
    let one = konst(&x[0], Rational::one());
    let prev = if i == 1 { one.clone() } else { x[i - 2].clone() };
    let mut bracket = one - prev;
    for xj in &x[..i.saturating_sub(2)] {
        bracket = bracket + xj.clone();
    }
    let xi = x[i - 1].clone();
    konst(&x[0], pow2(i)) * (xi.clone() - xi.clone() * xi) * bracket
}

/// `F_n(x)` with `n = x.len()`.
pub fn f_value<S: Scalar>(x: &[S]) -> S {
    let n = x.len();
    let a = alphas(x);
    let one = konst(&x[0], Rational::one());
    let mut acc = konst(&x[0], Rational::zero());
    // running Σ_{j<=i-2} x_j for the β bracket
    let mut prefix = konst(&x[0], Rational::zero());
    for i in 1..=n {
        if i >= 3 {
            prefix = prefix + x[i - 3].clone();
        }
        let prev = if i == 1 { one.clone() } else { x[i - 2].clone() };
        let xi = x[i - 1].clone();
        let beta_i = konst(&x[0], pow2(i)) * (xi.clone() - xi.clone() * xi) * (one.clone() - prev + prefix.clone());
        acc = acc + konst(&x[0], pow2(i - 1)) * a[i - 1].clone() - beta_i;
    }
    acc
}

/// The closed-form `∂_k F_n` at a vertex of the unit cube:
///
/// ```text
/// (1 − 2α_{k+1})·Σ_{i=1..k} 2^{i−1}·Π_{j=i..k−1}(1 − 2x_j)
///   − 2^k·(1 − 2x_k)·(1 − x_{k−1} + Σ_{i=1..k−2} x_i)
/// ```
pub fn partial_closed_form(k: usize, x: &[Rational]) -> Result<Rational, ObjectiveError> {
    let n = x.len();
    if !(1..=n).contains(&k) {
        return Err(ObjectiveError::IndexOutOfRange { index: k, n });
    }
    if let Some(i) = x.iter().position(|v| !is_zero_or_one(v)) {
        return Err(ObjectiveError::NotAVertex(i + 1));
    }
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let flip = |j: usize| &one - &two * &x[j - 1];
    let alpha_next = alpha(k + 1, x);

    let mut sum = Rational::zero();
    for i in 1..=k {
        let prod = (i..k).fold(Rational::one(), |acc, j| acc * flip(j));
        sum += pow2(i - 1) * prod;
    }
    let first = (&one - &two * alpha_next) * sum;

    let prev = if k == 1 { one.clone() } else { x[k - 2].clone() };
    let bracket = x[..k.saturating_sub(2)].iter().fold(&one - prev, |acc, v| acc + v);
    let second = pow2(k) * flip(k) * bracket;
    Ok(first - second)
}

/// Fully expanded monomial form of `F_n`.
pub fn expand(n: usize) -> MultiPoly {
    let vars: Vec<MultiPoly> = (1..=n).map(|i| MultiPoly::var(n, i)).collect();
    f_value(&vars)
}

/// `F_n` as an objective oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBoundPolynomial {
    n: usize,
}

impl LowerBoundPolynomial {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "F_n needs n >= 1");
        LowerBoundPolynomial { n }
    }
}

/// All partials of `F_n` at an arbitrary point in `O(n)` operations.
///
/// Differentiating the recursion term by term gives
///
/// ```text
/// ∂_k F_n = (1 − 2α_{k+1})·W_k − 2^k·(1 − 2x_k)·B_k + q_{k+1} − Σ_{i≥k+2} q_i
/// W_1 = 1,  W_{k+1} = (1 − 2x_k)·W_k + 2^k
/// B_k = 1 − x_{k−1} + Σ_{j≤k−2} x_j,   q_i = 2^i·(x_i − x_i²)
/// ```
///
/// Integer points are evaluated in machine integers when nothing overflows.
pub fn gradient_sweep(x: &[Rational]) -> Vec<Rational> {
    CheckedInt::lift(x)
        .and_then(|xi| CheckedInt::lower(&sweep(&xi)))
        .unwrap_or_else(|| sweep(x))
}

fn sweep<S: Scalar>(x: &[S]) -> Vec<S> {
    let n = x.len();
    let one = konst(&x[0], Rational::one());
    let zero = konst(&x[0], Rational::zero());
    let a = alphas(x);
    let b = brackets(x);
    // q[i-1] = q_i
    let mut q = Vec::with_capacity(n);
    let mut p = one.clone();
    for xi in x {
        p = p.clone() + p;
        q.push(p.clone() * (xi.clone() - xi.clone() * xi.clone()));
    }
    // tail[i] = Σ_{j>=i} q_j over 1-based j, tail[n+1] = tail[n+2] = 0
    let mut tail = vec![zero.clone(); n + 3];
    for i in (1..=n).rev() {
        tail[i] = tail[i + 1].clone() + q[i - 1].clone();
    }
    let mut w = one.clone();
    let mut p = one.clone();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        p = p.clone() + p; // 2^k
        let xk = x[k - 1].clone();
        let flip = one.clone() - xk.clone() - xk;
        let q_next = if k < n { q[k].clone() } else { zero.clone() };
        let twice_alpha = a[k].clone() + a[k].clone();
        out.push(
            (one.clone() - twice_alpha) * w.clone() - p.clone() * flip.clone() * b[k - 1].clone() + q_next
                - tail[k + 2].clone(),
        );
        w = flip * w + p.clone();
    }
    out
}

/// `[B_1, …, B_n]` with `B_k = 1 − x_{k−1} + Σ_{j≤k−2} x_j` and `x_0 = 1`.
fn brackets<S: Scalar>(x: &[S]) -> Vec<S> {
    let one = konst(&x[0], Rational::one());
    let mut out = Vec::with_capacity(x.len());
    let mut prefix = konst(&x[0], Rational::zero());
    for k in 1..=x.len() {
        if k >= 3 {
            prefix = prefix + x[k - 3].clone();
        }
        let prev = if k == 1 { one.clone() } else { x[k - 2].clone() };
        out.push(one.clone() - prev + prefix.clone());
    }
    out
}

/// `∂_k F_n` by forward-mode differentiation of the recursion.
pub fn partial_dual(k: usize, x: &[Rational]) -> Rational {
    let duals: Vec<DualNumber> = x
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i + 1 == k {
                DualNumber::variable(v.clone())
            } else {
                DualNumber::constant(v.clone())
            }
        })
        .collect();
    f_value(&duals).derivative
}

/// `μ ↦ ∇F_n(x + μd)ᵀd` by running the recursion over univariate
/// polynomials and differentiating in `μ`.
pub fn restriction_by_substitution(x: &[Rational], d: AxisDirection) -> UniPoly {
    let line: Vec<UniPoly> = x
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i + 1 == d.coord {
                UniPoly::linear(v.clone(), d.sign.as_rational())
            } else {
                UniPoly::constant(v.clone())
            }
        })
        .collect();
    f_value(&line).derivative()
}

impl ObjectiveOracle for LowerBoundPolynomial {
    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.n);
        CheckedInt::lift(x)
            .and_then(|xi| f_value(&xi).to_rational())
            .unwrap_or_else(|| f_value(x))
    }

    fn gradient(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.n);
        gradient_sweep(x)
    }

    /// Forward-mode: seed `x_k` with derivative 1 and run the recursion.
    fn partial(&self, x: &[Rational], k: usize) -> Rational {
        assert_eq!(x.len(), self.n);
        partial_dual(k, x)
    }

    /// `x_k` enters `∂_k F_n` only through `−2^k·(1 − 2x_k)·B_k`, so along
    /// `x + μ·s·e_k` the directional derivative is `s·∂_kF_n(x) + 2^{k+1}·B_k·μ`.
    fn edge_restriction(&self, x: &[Rational], d: AxisDirection) -> UniPoly {
        assert_eq!(x.len(), self.n);
        let k = d.coord;
        let slope0 = d.sign.as_rational() * gradient_sweep(x).swap_remove(k - 1);
        let b = brackets(&x[..k]).swap_remove(k - 1);
        UniPoly::linear(slope0, pow2(k + 1) * b)
    }

    fn describe(&self) -> String {
        format!("F_{}", self.n)
    }
}
