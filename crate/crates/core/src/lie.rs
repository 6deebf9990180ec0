//! The five-dimensional step-3 nilpotent Lie algebra spanned by
//! `P, E, F, Λ, Y` with nonzero brackets
//!
//! ```text
//! [P, E] = F,   [P, F] = Λ,   [F, E] = Y
//! ```
//!
//! Coefficient vectors, matrices and structure constants all use the fixed
//! basis order `P=0, E=1, F=2, Λ=3, Y=4`.

use std::array;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

pub const DIM: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisIndex {
    P = 0,
    E = 1,
    F = 2,
    Lambda = 3,
    Y = 4,
}

impl BasisIndex {
    pub const ALL: [BasisIndex; DIM] = [
        BasisIndex::P,
        BasisIndex::E,
        BasisIndex::F,
        BasisIndex::Lambda,
        BasisIndex::Y,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BasisIndex::P => "P",
            BasisIndex::E => "E",
            BasisIndex::F => "F",
            BasisIndex::Lambda => "Λ",
            BasisIndex::Y => "Y",
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Element of the Lie algebra as a coefficient vector over `(P, E, F, Λ, Y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<S> {
    pub coeffs: [S; DIM],
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn new(coeffs: [S; DIM]) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(array::from_fn(|_| S::zero()))
    }

    pub fn basis(b: BasisIndex) -> Self {
        Self::basis_scaled(b, S::one())
    }

    pub fn basis_scaled(b: BasisIndex, c: S) -> Self {
        let mut out = Self::zero();
        out.coeffs[b.index()] = c;
        out
    }

    pub fn coeff(&self, b: BasisIndex) -> &S {
        &self.coeffs[b.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(array::from_fn(|i| self.coeffs[i].clone() * c.clone()))
    }

    /// Largest absolute coefficient.
    pub fn max_norm(&self) -> S {
        self.coeffs
            .iter()
            .map(S::abs)
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    /// Bracket using the hard-wired table of the Aristotle extension.
    ///
    /// Equivalent to `StructureTensor::aristotle().bracket(self, other)` but
    /// allocation free; the equivalence is covered by tests.
    pub fn bracket(&self, other: &Self) -> Self {
        let [ap, ae, af, _, _] = &self.coeffs;
        let [bp, be, bf, _, _] = &other.coeffs;
        let f = ap.clone() * be.clone() - ae.clone() * bp.clone();
        let lambda = ap.clone() * bf.clone() - af.clone() * bp.clone();
        let y = af.clone() * be.clone() - ae.clone() * bf.clone();
        Self::new([S::zero(), S::zero(), f, lambda, y])
    }
}

impl<S: Scalar> Add for AlgebraElement<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Add for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn add(self, rhs: Self) -> AlgebraElement<S> {
        AlgebraElement::new(array::from_fn(|i| {
            self.coeffs[i].clone() + rhs.coeffs[i].clone()
        }))
    }
}

impl<S: Scalar> Sub for AlgebraElement<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Sub for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn sub(self, rhs: Self) -> AlgebraElement<S> {
        AlgebraElement::new(array::from_fn(|i| {
            self.coeffs[i].clone() - rhs.coeffs[i].clone()
        }))
    }
}

impl<S: Scalar> Neg for AlgebraElement<S> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraElement::new(self.coeffs.map(|c| -c))
    }
}

impl<S: Scalar> Neg for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;
    fn neg(self) -> AlgebraElement<S> {
        self.clone().neg()
    }
}

/// Structure constants: `[X_i, X_j] = Σ_m c[i][j][m] X_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTensor<S> {
    pub c: [[[S; DIM]; DIM]; DIM],
}

impl<S: Scalar> StructureTensor<S> {
    pub fn zero() -> Self {
        Self {
            c: array::from_fn(|_| array::from_fn(|_| array::from_fn(|_| S::zero()))),
        }
    }

    /// Sets `[i, j] = Σ coeff·X_m` and the antisymmetric partner `[j, i]`.
    pub fn set_bracket(&mut self, i: BasisIndex, j: BasisIndex, value: &AlgebraElement<S>) {
        for m in 0..DIM {
            self.c[i.index()][j.index()][m] = value.coeffs[m].clone();
            self.c[j.index()][i.index()][m] = -value.coeffs[m].clone();
        }
    }

    /// `[P, E] = F, [P, F] = Λ, [F, E] = Y`, all other brackets zero.
    pub fn aristotle() -> Self {
        use BasisIndex::*;
        let mut t = Self::zero();
        t.set_bracket(P, E, &AlgebraElement::basis(F));
        t.set_bracket(P, F, &AlgebraElement::basis(Lambda));
        t.set_bracket(F, E, &AlgebraElement::basis(Y));
        t
    }

    pub fn basis_bracket(&self, i: BasisIndex, j: BasisIndex) -> AlgebraElement<S> {
        AlgebraElement::new(self.c[i.index()][j.index()].clone())
    }

    pub fn bracket(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out: [S; DIM] = array::from_fn(|_| S::zero());
        for i in 0..DIM {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let w = a.coeffs[i].clone() * b.coeffs[j].clone();
                for (m, slot) in out.iter_mut().enumerate() {
                    let c = &self.c[i][j][m];
                    if !c.is_zero() {
                        *slot = slot.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        AlgebraElement::new(out)
    }

    /// Largest `|c[i][j][m] + c[j][i][m]|`.
    pub fn antisymmetry_residual(&self) -> S {
        let mut worst = S::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                for m in 0..DIM {
                    let r = (self.c[i][j][m].clone() + self.c[j][i][m].clone()).abs();
                    if r > worst {
                        worst = r;
                    }
                }
            }
        }
        worst
    }

    /// Maximum coefficient norm of `[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]` over
    /// all basis triples. Zero exactly when the tensor defines a Lie algebra
    /// (given antisymmetry).
    pub fn jacobi_residual(&self) -> S {
        let mut worst = S::zero();
        for (i, j, k) in basis_triples() {
            let r = self.jacobi_cyclic_sum(i, j, k).max_norm();
            if r > worst {
                worst = r;
            }
        }
        worst
    }

    pub fn jacobi_cyclic_sum(&self, i: BasisIndex, j: BasisIndex, k: BasisIndex) -> AlgebraElement<S> {
        let (x, y, z) = (
            AlgebraElement::basis(i),
            AlgebraElement::basis(j),
            AlgebraElement::basis(k),
        );
        let a = self.bracket(&x, &self.bracket(&y, &z));
        let b = self.bracket(&y, &self.bracket(&z, &x));
        let c = self.bracket(&z, &self.bracket(&x, &y));
        &(&a + &b) + &c
    }

    /// Largest coefficient of any left-nested basis bracket
    /// `[X_a, [X_b, [X_c, X_d]]]`; zero iff the algebra is nilpotent of step
    /// at most 3.
    pub fn nested_bracket_residual(&self, depth: usize) -> S {
        let mut worst = S::zero();
        let mut words: Vec<AlgebraElement<S>> =
            BasisIndex::ALL.iter().map(|&b| AlgebraElement::basis(b)).collect();
        for _ in 1..depth {
            let mut next = Vec::with_capacity(words.len() * DIM);
            for w in &words {
                for b in BasisIndex::ALL {
                    next.push(self.bracket(&AlgebraElement::basis(b), w));
                }
            }
            words = next;
        }
        for w in &words {
            let r = w.max_norm();
            if r > worst {
                worst = r;
            }
        }
        worst
    }

    /// Matrix of `bracket(a, ·)` under this tensor.
    pub fn ad(&self, a: &AlgebraElement<S>) -> AdjointMatrix<S> {
        AdjointMatrix::from_columns(array::from_fn(|j| {
            self.bracket(a, &AlgebraElement::basis(BasisIndex::ALL[j]))
        }))
    }
}

/// Unordered triples `i < j < k` of distinct basis elements (10 of them).
pub fn basis_triples() -> impl Iterator<Item = (BasisIndex, BasisIndex, BasisIndex)> {
    let all = BasisIndex::ALL;
    (0..DIM).flat_map(move |i| {
        (i + 1..DIM).flat_map(move |j| (j + 1..DIM).map(move |k| (all[i], all[j], all[k])))
    })
}

/// 5×5 matrix acting on coefficient column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointMatrix<S> {
    pub m: [[S; DIM]; DIM],
}

impl<S: Scalar> AdjointMatrix<S> {
    pub fn identity() -> Self {
        Self {
            m: array::from_fn(|i| array::from_fn(|j| if i == j { S::one() } else { S::zero() })),
        }
    }

    pub fn zero() -> Self {
        Self {
            m: array::from_fn(|_| array::from_fn(|_| S::zero())),
        }
    }

    pub fn from_columns(cols: [AlgebraElement<S>; DIM]) -> Self {
        Self {
            m: array::from_fn(|i| array::from_fn(|j| cols[j].coeffs[i].clone())),
        }
    }

    pub fn column(&self, j: usize) -> AlgebraElement<S> {
        AlgebraElement::new(array::from_fn(|i| self.m[i][j].clone()))
    }

    pub fn apply(&self, v: &AlgebraElement<S>) -> AlgebraElement<S> {
        AlgebraElement::new(array::from_fn(|i| {
            (0..DIM).fold(S::zero(), |acc, j| {
                acc + self.m[i][j].clone() * v.coeffs[j].clone()
            })
        }))
    }

    /// `Mᵀ·v`, i.e. the row vector `v` multiplied on the right by `M`.
    pub fn apply_transpose(&self, v: &[S; DIM]) -> [S; DIM] {
        array::from_fn(|j| {
            (0..DIM).fold(S::zero(), |acc, i| {
                acc + v[i].clone() * self.m[i][j].clone()
            })
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            m: array::from_fn(|i| {
                array::from_fn(|j| {
                    (0..DIM).fold(S::zero(), |acc, k| {
                        acc + self.m[i][k].clone() * other.m[k][j].clone()
                    })
                })
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            m: array::from_fn(|i| array::from_fn(|j| self.m[i][j].clone() + other.m[i][j].clone())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            m: array::from_fn(|i| array::from_fn(|j| self.m[i][j].clone() - other.m[i][j].clone())),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            m: array::from_fn(|i| array::from_fn(|j| self.m[i][j].clone() * c.clone())),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(S::is_zero)
    }

    /// `I + N + N²/2`, the exact exponential of a matrix with `N³ = 0`.
    pub fn exp_nilpotent(n: &Self) -> Self {
        let n2 = n.mul(n);
        Self::identity().add(n).add(&n2.scale(&S::half()))
    }

    /// Determinant by cofactor-free Gaussian elimination over the field.
    pub fn determinant(&self) -> S {
        let mut a = self.m.clone();
        let mut det = S::one();
        for col in 0..DIM {
            let Some(p) = (col..DIM).find(|&r| !a[r][col].is_zero()) else {
                return S::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = det * pivot.clone();
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                let factor = row[col].clone() / pivot.clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        det
    }
}

impl<S: Scalar> Mul for &AdjointMatrix<S> {
    type Output = AdjointMatrix<S>;
    fn mul(self, rhs: Self) -> AdjointMatrix<S> {
        AdjointMatrix::mul(self, rhs)
    }
}

/// Matrix of `bracket(a, ·)` for the Aristotle algebra.
pub fn ad<S: Scalar>(a: &AlgebraElement<S>) -> AdjointMatrix<S> {
    AdjointMatrix::from_columns(array::from_fn(|j| {
        a.bracket(&AlgebraElement::basis(BasisIndex::ALL[j]))
    }))
}

/// Baker–Campbell–Hausdorff product: `exp(a)·exp(b) = exp(bch(a, b))`.
///
/// The series terminates after the third-order terms because every bracket
/// of four letters vanishes; the degree-4 term `[b,[a,[a,b]]]` is one of them.
pub fn bch<S: Scalar>(a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> AlgebraElement<S> {
    let ab = a.bracket(b);
    let a_ab = a.bracket(&ab);
    let b_ba = b.bracket(&(-&ab));
    let twelfth = S::ratio(1, 12);
    let mut out = a + b;
    out = &out + &ab.scale(&S::half());
    out = &out + &a_ab.scale(&twelfth);
    &out + &b_ba.scale(&twelfth)
}
