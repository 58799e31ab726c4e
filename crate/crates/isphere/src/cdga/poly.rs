//! Graded-commutative polynomials over a named generator list.
//!
//! Monomials are exponent vectors over the generator list; odd-degree
//! generators square to zero and reordering picks up Koszul signs. The text
//! form is `coef*gen^pow*... + ...`, e.g. `e2*e2` or `-1/2*e2^2*e3`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// A commutative word in the generators: one exponent per generator index.
/// Trailing zeros are implicit, so the vector length need not match the
/// generator list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn generator(i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn width(&self) -> usize {
        self.exps.len()
    }

    /// Total degree with respect to generator degrees.
    pub fn degree(&self, gen_degrees: &[usize]) -> usize {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| gen_degrees[i] * e as usize)
            .sum()
    }

    /// Word length (total exponent).
    pub fn length(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The factor sequence in generator order, one entry per unit exponent.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }

    /// Graded-commutative product: `None` when an odd generator squares.
    /// The sign counts the odd-degree transpositions needed to interleave
    /// the factor sequences into generator order.
    pub fn mul(&self, other: &Monomial, gen_degrees: &[usize]) -> Option<(Rat, Monomial)> {
        let width = self.width().max(other.width());
        let mut exps = vec![0u32; width];
        let mut swaps: u64 = 0;
        // odd factors of `other` that must pass odd factors of `self` with a
        // strictly larger generator index
        let odd_self: Vec<usize> = self
            .factors()
            .into_iter()
            .filter(|&i| gen_degrees[i] % 2 == 1)
            .collect();
        for i in 0..width {
            let e = self.exp(i) + other.exp(i);
            if gen_degrees.get(i).copied().unwrap_or(0) % 2 == 1 && e > 1 {
                return None;
            }
            exps[i] = e;
        }
        for j in other
            .factors()
            .into_iter()
            .filter(|&j| gen_degrees[j] % 2 == 1)
        {
            swaps += odd_self.iter().filter(|&&i| i > j).count() as u64;
        }
        let sign = if swaps % 2 == 0 { Rat::one() } else { -Rat::one() };
        Some((sign, Monomial::from_exps(exps)))
    }
}

/// A finite sum of scaled monomials, kept sorted and combined.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: Vec<(Rat, Monomial)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_terms(vec![(c, Monomial::one())])
    }

    pub fn generator(i: usize) -> Self {
        Poly::from_terms(vec![(Rat::one(), Monomial::generator(i))])
    }

    pub fn from_terms(terms: Vec<(Rat, Monomial)>) -> Self {
        let mut sorted = terms;
        sorted.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(Rat, Monomial)> = Vec::new();
        for (c, m) in sorted {
            match out.last_mut() {
                Some((acc, last)) if *last == m => *acc += &c,
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Rat, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Poly::from_terms(terms)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(a, m)| (a * c, m.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly, gen_degrees: &[usize]) -> Poly {
        let mut terms = Vec::new();
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                if let Some((sign, mn)) = m.mul(n, gen_degrees) {
                    terms.push((a * b * sign, mn));
                }
            }
        }
        Poly::from_terms(terms)
    }

    /// Largest generator index appearing, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter_map(|(_, m)| (0..m.width()).rev().find(|&i| m.exp(i) > 0))
            .max()
    }

    /// True when the polynomial is homogeneous of the given total degree
    /// (the zero polynomial is homogeneous of every degree).
    pub fn is_homogeneous(&self, gen_degrees: &[usize], degree: usize) -> bool {
        self.terms.iter().all(|(_, m)| m.degree(gen_degrees) == degree)
    }

    /// True when every monomial has word length at least 2 — no linear part.
    pub fn is_decomposable(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.length() >= 2)
    }

    /// Parse `coef*gen^pow*... + ...` against a list of generator names.
    pub fn parse(text: &str, names: &[&str]) -> Result<Poly> {
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(Poly::zero());
        }
        // split into signed terms on top-level + / -
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut signs = vec![Rat::one()];
        let mut chunks: Vec<(Rat, String)> = Vec::new();
        for ch in text.chars() {
            match ch {
                '+' | '-' if !current.trim().is_empty() => {
                    chunks.push((signs.pop().unwrap(), current.trim().to_owned()));
                    current = String::new();
                    signs.push(if ch == '-' { -Rat::one() } else { Rat::one() });
                }
                '-' if current.trim().is_empty() => {
                    let s = signs.pop().unwrap();
                    signs.push(-s);
                }
                '+' if current.trim().is_empty() => {}
                _ => current.push(ch),
            }
        }
        if !current.trim().is_empty() {
            chunks.push((signs.pop().unwrap(), current.trim().to_owned()));
        }
        for (sign, chunk) in chunks {
            let mut coef = sign;
            let mut exps = vec![0u32; names.len()];
            for factor in chunk.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::invalid(format!("empty factor in {chunk:?}")));
                }
                let (head, pow) = match factor.split_once('^') {
                    Some((h, p)) => {
                        let pow: u32 = p.trim().parse().map_err(|_| {
                            Error::invalid(format!("bad exponent in {factor:?}"))
                        })?;
                        (h.trim(), pow)
                    }
                    None => (factor, 1),
                };
                if let Some(idx) = names.iter().position(|n| *n == head) {
                    exps[idx] += pow;
                } else if let Ok(c) = head.parse::<Rat>() {
                    for _ in 0..pow {
                        coef = &coef * &c;
                    }
                } else {
                    return Err(Error::invalid(format!(
                        "unknown generator or literal {head:?}"
                    )));
                }
            }
            terms.push((coef, Monomial::from_exps(exps)));
        }
        Ok(Poly::from_terms(terms))
    }

    /// Render against a list of generator names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut parts = Vec::new();
        for (c, m) in &self.terms {
            let mut factors = Vec::new();
            for i in 0..m.width() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    e => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let body = if factors.is_empty() {
                c.to_string()
            } else if c.is_one() {
                factors.join("*")
            } else if (-c).is_one() {
                format!("-{}", factors.join("*"))
            } else {
                format!("{}*{}", c, factors.join("*"))
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "g{i}")?;
            } else {
                write!(f, "g{i}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn koszul_signs() {
        // two odd generators anticommute
        let degs = vec![1, 1];
        let a = Monomial::generator(0);
        let b = Monomial::generator(1);
        let (s1, ab) = a.mul(&b, &degs).unwrap();
        let (s2, ba) = b.mul(&a, &degs).unwrap();
        assert_eq!(ab, ba);
        assert!(s1.is_one());
        assert_eq!(s2, -Rat::one());
        // odd squares vanish
        assert!(a.mul(&a, &degs).is_none());
        // even generators commute with everything
        let degs = vec![1, 2];
        let (s, _) = Monomial::generator(1)
            .mul(&Monomial::generator(0), &degs)
            .unwrap();
        assert!(s.is_one());
    }

    #[test]
    fn triple_odd_product_sign() {
        // (g1 g2) * g0 = +g0 g1 g2 requires two transpositions
        let degs = vec![1, 1, 1];
        let g12 = Monomial::from_exps(vec![0, 1, 1]);
        let (s, m) = g12.mul(&Monomial::generator(0), &degs).unwrap();
        assert_eq!(m, Monomial::from_exps(vec![1, 1, 1]));
        assert!(s.is_one());
        // g1 * g0 = -g0 g1
        let (s, _) = Monomial::generator(1)
            .mul(&Monomial::generator(0), &degs)
            .unwrap();
        assert_eq!(s, -Rat::one());
    }

    #[test]
    fn parse_and_render_round_trip() {
        let names = ["e2", "e3"];
        let p = Poly::parse("e2*e2", &names).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].1, Monomial::from_exps(vec![2, 0]));
        let q = Poly::parse("2*e2^2*e3 + -1/2*e2", &names).unwrap();
        let rendered = q.render(&["e2".into(), "e3".into()]);
        let back = Poly::parse(&rendered, &names).unwrap();
        assert_eq!(back, q);
        assert_eq!(Poly::parse("0", &names).unwrap(), Poly::zero());
        assert!(Poly::parse("bogus", &names).is_err());
        // subtraction syntax
        let r = Poly::parse("e2^2 - e3", &names).unwrap();
        assert_eq!(r.terms().len(), 2);
    }

    #[test]
    fn polynomial_algebra_identities() {
        let degs = vec![2, 3];
        let names = ["x", "y"];
        let x = Poly::parse("x", &names).unwrap();
        let y = Poly::parse("y", &names).unwrap();
        let xy = x.mul(&y, &degs);
        let yx = y.mul(&x, &degs);
        // even * odd commute
        assert_eq!(xy, yx);
        // y^2 = 0
        assert!(y.mul(&y, &degs).is_zero());
        // distributivity
        let sum = x.add(&y.scale(&rat(3)));
        assert_eq!(
            sum.mul(&x, &degs),
            x.mul(&x, &degs).add(&y.mul(&x, &degs).scale(&rat(3)))
        );
        assert!(x.mul(&x, &degs).is_homogeneous(&degs, 4));
        assert!(!sum.is_decomposable());
        assert!(x.mul(&x, &degs).is_decomposable());
    }
}
