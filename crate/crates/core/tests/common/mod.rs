#![allow(dead_code)]

use aristotle_core::{DualElement, GroupElement, Rational, Scalar};
use proptest::prelude::*;

pub type Q = Rational;

pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::ratio(n, d)
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Q::ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Q> {
    (prop_oneof![-30i64..=-1, 1i64..=30], 1i64..=12).prop_map(|(n, d)| Q::ratio(n, d))
}

pub fn group_element() -> impl Strategy<Value = GroupElement<Q>> {
    proptest::array::uniform5(rational()).prop_map(GroupElement::from_array)
}

pub fn dual_element() -> impl Strategy<Value = DualElement<Q>> {
    proptest::array::uniform5(rational()).prop_map(DualElement::from_array)
}

pub fn generic_dual_element() -> impl Strategy<Value = DualElement<Q>> {
    (rational(), rational(), rational(), nonzero_rational(), nonzero_rational())
        .prop_map(|(p, e, f, k, y)| DualElement::new(p, e, f, k, y))
}

/// Truncated tensor algebra on the two letters `P`, `E`: noncommutative
/// polynomials modulo words of length ≥ 4.
///
/// The Aristotle algebra is the free step-3 nilpotent Lie algebra on `P` and
/// `E` (`F = [P,E]`, `Λ = [P,F]`, `Y = [F,E]`), so group elements embed
/// faithfully here as truncated exponentials. Products are plain word
/// concatenation; no BCH is involved.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    /// Indexed by word; a word of length `n` over {0 = P, 1 = E} is stored at
    /// `(1 << n) - 1 + bits` with the first letter in the highest bit.
    pub c: Vec<Q>,
}

const MAX_LEN: usize = 3;
const SIZE: usize = (1 << (MAX_LEN + 1)) - 1;

fn slot(len: usize, bits: usize) -> usize {
    (1 << len) - 1 + bits
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor { c: vec![q(0); SIZE] }
    }

    pub fn scalar(v: Q) -> Self {
        let mut t = Self::zero();
        t.c[0] = v;
        t
    }

    pub fn letter(l: usize) -> Self {
        let mut t = Self::zero();
        t.c[slot(1, l)] = q(1);
        t
    }

    pub fn add(&self, o: &Self) -> Self {
        Tensor { c: self.c.iter().zip(&o.c).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn scale(&self, v: &Q) -> Self {
        Tensor { c: self.c.iter().map(|a| a.clone() * v.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for la in 0..=MAX_LEN {
            for ba in 0..(1 << la) {
                let ca = &self.c[slot(la, ba)];
                if ca == &q(0) {
                    continue;
                }
                for lb in 0..=(MAX_LEN - la) {
                    for bb in 0..(1 << lb) {
                        let cb = &o.c[slot(lb, bb)];
                        if cb == &q(0) {
                            continue;
                        }
                        let idx = slot(la + lb, (ba << lb) | bb);
                        out.c[idx] = out.c[idx].clone() + ca.clone() * cb.clone();
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self).scale(&q(-1)))
    }

    /// `exp(X)` for `X` without constant term.
    pub fn exp(&self) -> Self {
        assert_eq!(self.c[0], q(0));
        let x2 = self.mul(self);
        let x3 = x2.mul(self);
        Tensor::scalar(q(1))
            .add(self)
            .add(&x2.scale(&qr(1, 2)))
            .add(&x3.scale(&qr(1, 6)))
    }
}

/// Images of the basis `P, E, F, Λ, Y` in the tensor algebra.
pub fn basis_tensors() -> [Tensor; 5] {
    let p = Tensor::letter(0);
    let e = Tensor::letter(1);
    let f = p.commutator(&e);
    let lambda = p.commutator(&f);
    let y = f.commutator(&e);
    [p, e, f, lambda, y]
}

pub fn lie_tensor(coeffs: &[Q; 5]) -> Tensor {
    basis_tensors()
        .iter()
        .zip(coeffs)
        .fold(Tensor::zero(), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// `exp(aΛ + bY)·exp(tE + ζF)·exp(xP)` in the tensor algebra.
pub fn group_tensor(g: &GroupElement<Q>) -> Tensor {
    let central = lie_tensor(&[q(0), q(0), q(0), g.a.clone(), g.b.clone()]).exp();
    let time = lie_tensor(&[q(0), g.t.clone(), g.zeta.clone(), q(0), q(0)]).exp();
    let space = lie_tensor(&[g.x.clone(), q(0), q(0), q(0), q(0)]).exp();
    central.mul(&time).mul(&space)
}
