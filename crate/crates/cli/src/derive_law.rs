//! `derive-law`: the group law rebuilt as exact polynomials.
//!
//! Each output coordinate of the product is a polynomial of total degree at
//! most 3 in the ten input coordinates (the algebra is nilpotent of step 3).
//! It is recovered by Newton forward differences on the lattice
//! `{α ∈ ℕ¹⁰ : |α| ≤ 3}`, which is unisolvent for that space: the forward
//! difference `Δ^β f(0)` is the coefficient of `∏ C(zᵢ, βᵢ)`, and the binomial
//! basis is then expanded into monomials. The reconstruction is checked on
//! fresh random points.

use std::collections::BTreeMap;

use aristotle_core::{compose, compose_printed, GroupElement, Rational, Scalar};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::output::pretty_json;
use crate::sampling::Sampler;

type Q = Rational;

pub const VARIABLES: [&str; 10] = ["x", "t", "zeta", "a", "b", "x'", "t'", "zeta'", "a'", "b'"];
pub const OUTPUTS: [&str; 5] = ["x''", "t''", "zeta''", "a''", "b''"];
pub const DEGREE: u32 = 3;

pub type Exponents = [u8; 10];

/// Sparse polynomial in the ten input coordinates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Exponents, Q>,
}

impl Polynomial {
    fn add_term(&mut self, e: Exponents, c: Q) {
        let entry = self.terms.entry(e).or_insert_with(Q::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn eval(&self, z: &[Q; 10]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for (zi, &k) in z.iter().zip(e) {
                for _ in 0..k {
                    term *= zi.clone();
                }
            }
            acc + term
        })
    }

    pub fn coefficient(&self, e: &Exponents) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }
}

/// All multi-indices of total degree at most `DEGREE`, in graded order.
pub fn lattice() -> Vec<Exponents> {
    fn fill(i: usize, left: u8, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == cur.len() {
            out.push(*cur);
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            fill(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    fill(0, DEGREE as u8, &mut [0; 10], &mut out);
    out.sort_by_key(|e| (degree(e), std::cmp::Reverse(*e)));
    out
}

fn degree(e: &Exponents) -> u32 {
    e.iter().map(|&k| k as u32).sum()
}

fn binomial(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, i| acc * (n as i64 - i) / (i + 1))
}

/// Monomial coefficients of `C(z, n) = z(z−1)…(z−n+1)/n!`, lowest power first.
fn binomial_poly(n: u8) -> Vec<Q> {
    let mut p = vec![Q::one()];
    for i in 0..n as i64 {
        // multiply by (z − i)/(i + 1)
        let mut next = vec![Q::zero(); p.len() + 1];
        let inv = Q::ratio(1, i + 1);
        for (j, c) in p.iter().enumerate() {
            next[j + 1] = next[j + 1].clone() + c.clone() * inv.clone();
            next[j] = next[j].clone() - c.clone() * Q::from_i64(i) * inv.clone();
        }
        p = next;
    }
    p
}

fn point(e: &Exponents) -> [Q; 10] {
    e.map(|k| Q::from_i64(k as i64))
}

fn split(z: &[Q; 10]) -> (GroupElement<Q>, GroupElement<Q>) {
    (
        GroupElement::from_array(std::array::from_fn(|i| z[i].clone())),
        GroupElement::from_array(std::array::from_fn(|i| z[i + 5].clone())),
    )
}

/// Reconstructs every output coordinate of `law` from its lattice values.
pub fn reconstruct(law: impl Fn(&GroupElement<Q>, &GroupElement<Q>) -> GroupElement<Q>) -> [Polynomial; 5] {
    let nodes = lattice();
    let values: BTreeMap<Exponents, [Q; 5]> = nodes
        .iter()
        .map(|e| {
            let (g, h) = split(&point(e));
            (*e, law(&g, &h).to_array())
        })
        .collect();
    let mut polys: [Polynomial; 5] = Default::default();
    for beta in &nodes {
        // Δ^β f(0) = Σ_{γ ≤ β} (−1)^{|β−γ|} ∏ C(βᵢ, γᵢ) f(γ)
        let mut diff: [Q; 5] = std::array::from_fn(|_| Q::zero());
        for gamma in nodes.iter().filter(|g| g.iter().zip(beta).all(|(a, b)| a <= b)) {
            let sign = if (degree(beta) - degree(gamma)).is_multiple_of(2) { 1 } else { -1 };
            let weight = beta.iter().zip(gamma).map(|(&b, &g)| binomial(b, g)).product::<i64>() * sign;
            let w = Q::from_i64(weight);
            for (d, v) in diff.iter_mut().zip(&values[gamma]) {
                *d = d.clone() + w.clone() * v.clone();
            }
        }
        if diff.iter().all(Zero::is_zero) {
            continue;
        }
        let basis = expand_binomial_basis(beta);
        for (poly, d) in polys.iter_mut().zip(&diff) {
            if d.is_zero() {
                continue;
            }
            for (e, c) in &basis.terms {
                poly.add_term(*e, c.clone() * d.clone());
            }
        }
    }
    polys
}

/// `∏ C(zᵢ, βᵢ)` in the monomial basis.
fn expand_binomial_basis(beta: &Exponents) -> Polynomial {
    let mut acc: Vec<(Exponents, Q)> = vec![([0; 10], Q::one())];
    for (i, &b) in beta.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let factor = binomial_poly(b);
        let mut next = Vec::new();
        for (e, c) in &acc {
            for (power, fc) in factor.iter().enumerate() {
                if fc.is_zero() {
                    continue;
                }
                let mut e2 = *e;
                e2[i] += power as u8;
                next.push((e2, c.clone() * fc.clone()));
            }
        }
        acc = next;
    }
    let mut p = Polynomial::default();
    for (e, c) in acc {
        p.add_term(e, c);
    }
    p
}

/// Number of random points where the polynomials differ from `law`.
pub fn count_mismatches(
    polys: &[Polynomial; 5],
    law: impl Fn(&GroupElement<Q>, &GroupElement<Q>) -> GroupElement<Q>,
    points: &[[Q; 10]],
) -> usize {
    points
        .iter()
        .filter(|z| {
            let (g, h) = split(z);
            let want = law(&g, &h).to_array();
            polys.iter().zip(&want).any(|(p, w)| &p.eval(z) != w)
        })
        .count()
}

pub fn monomial_name(e: &Exponents) -> String {
    let parts: Vec<String> = VARIABLES
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub struct Row {
    pub monomial: String,
    pub derived: Q,
    pub printed: Q,
}

impl Row {
    pub fn agrees(&self) -> bool {
        self.derived == self.printed
    }
}

/// Union of the monomials of both laws for one coordinate, in graded order.
pub fn table(derived: &Polynomial, printed: &Polynomial) -> Vec<Row> {
    let mut keys: Vec<Exponents> = derived.terms.keys().chain(printed.terms.keys()).copied().collect();
    keys.sort_by_key(|e| (degree(e), std::cmp::Reverse(*e)));
    keys.dedup();
    keys.iter()
        .map(|e| Row {
            monomial: monomial_name(e),
            derived: derived.coefficient(e),
            printed: printed.coefficient(e),
        })
        .collect()
}

pub struct Derivation {
    pub derived: [Polynomial; 5],
    pub printed: [Polynomial; 5],
    pub derived_mismatches: usize,
    pub printed_mismatches: usize,
}

pub fn derive(seed: u64, count: usize) -> Derivation {
    let derived = reconstruct(compose);
    let printed = reconstruct(compose_printed);
    let mut rng = Sampler::new(seed);
    let points: Vec<[Q; 10]> = (0..count).map(|_| std::array::from_fn(|_| rng.scalar::<Q>())).collect();
    Derivation {
        derived_mismatches: count_mismatches(&derived, compose, &points),
        printed_mismatches: count_mismatches(&printed, compose_printed, &points),
        derived,
        printed,
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "CONFIRMS"
    } else {
        "CONTRADICTS"
    }
}

/// Returns the report and the number of points where either reconstruction
/// disagrees with its law.
pub fn run(config: &RunConfig) -> (String, usize) {
    let d = derive(config.seed, config.count);
    let bad = d.derived_mismatches + d.printed_mismatches;
    let text = match config.format {
        Format::Text => render_text(config, &d),
        _ => render_json(config, &d),
    };
    (text, bad)
}

fn render_json(config: &RunConfig, d: &Derivation) -> String {
    let coordinates: Vec<Value> = OUTPUTS
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let rows = table(&d.derived[i], &d.printed[i]);
            let all = rows.iter().all(Row::agrees);
            let terms: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "monomial": r.monomial,
                        "derived": r.derived.render(),
                        "printed": r.printed.render(),
                        "verdict": verdict(r.agrees()),
                    })
                })
                .collect();
            json!({ "name": name, "verdict": verdict(all), "terms": terms })
        })
        .collect();
    pretty_json(&json!({
        "command": "derive-law",
        "seed": config.seed,
        "degree_bound": DEGREE,
        "lattice_points": lattice().len(),
        "variables": VARIABLES,
        "verification": {
            "points": config.count,
            "derived_mismatches": d.derived_mismatches,
            "printed_mismatches": d.printed_mismatches,
            "passed": d.derived_mismatches + d.printed_mismatches == 0,
        },
        "coordinates": coordinates,
    }))
}

fn render_text(config: &RunConfig, d: &Derivation) -> String {
    let mut out = format!(
        "Group law reconstructed on {} lattice points (total degree <= {DEGREE})\n\
         checked on {} random points: {} mismatches (derived), {} mismatches (printed)\n",
        lattice().len(),
        config.count,
        d.derived_mismatches,
        d.printed_mismatches
    );
    for (i, name) in OUTPUTS.iter().enumerate() {
        let rows = table(&d.derived[i], &d.printed[i]);
        let all = rows.iter().all(Row::agrees);
        out.push_str(&format!("\n{name}  [{}]\n", verdict(all)));
        out.push_str(&format!("  {:<14} {:>9} {:>9}  verdict\n", "monomial", "derived", "printed"));
        for r in &rows {
            out.push_str(&format!(
                "  {:<14} {:>9} {:>9}  {}\n",
                r.monomial,
                r.derived.render(),
                r.printed.render(),
                verdict(r.agrees())
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(pairs: &[(usize, u8)]) -> Exponents {
        let mut e = [0; 10];
        for &(i, k) in pairs {
            e[i] = k;
        }
        e
    }

    #[test]
    fn lattice_size() {
        assert_eq!(lattice().len(), 286);
    }

    #[test]
    fn binomial_polynomials() {
        assert_eq!(binomial_poly(3), vec![Q::zero(), Q::ratio(1, 3), Q::ratio(-1, 2), Q::ratio(1, 6)]);
        assert_eq!(binomial(3, 2), 3);
    }

    #[test]
    fn known_coefficients() {
        let d = derive(42, 50);
        assert_eq!(d.derived_mismatches, 0);
        assert_eq!(d.printed_mismatches, 0);
        // x t' in zeta''
        assert_eq!(d.derived[2].coefficient(&exps(&[(0, 1), (6, 1)])), Q::one());
        // x zeta' in a''
        assert_eq!(d.derived[3].coefficient(&exps(&[(0, 1), (7, 1)])), Q::one());
        // zeta' t' appears only in the printed b''
        let zt = exps(&[(6, 1), (7, 1)]);
        assert_eq!(d.printed[4].coefficient(&zt), Q::one());
        assert_eq!(d.derived[4].coefficient(&zt), Q::zero());
        assert_eq!(d.derived[4].coefficient(&exps(&[(2, 1), (6, 1)])), Q::ratio(1, 2));
        assert_eq!(d.derived[4].coefficient(&exps(&[(0, 1), (1, 1), (6, 1)])), Q::ratio(-1, 2));
        assert_eq!(monomial_name(&exps(&[(0, 2), (6, 1)])), "x^2*t'");
    }

    #[test]
    fn only_b_disagrees() {
        let d = derive(1, 10);
        for (i, name) in OUTPUTS.iter().enumerate().take(4) {
            assert!(table(&d.derived[i], &d.printed[i]).iter().all(Row::agrees), "{name}");
        }
        assert!(!table(&d.derived[4], &d.printed[4]).iter().all(Row::agrees));
    }
}
