//! Free persistent CDGAs on interval-supported generators.
//!
//! A free presentation is a finite list of generators, each with a degree
//! `≥ 1`, a half-open support `[s,t)` or `[s,∞)`, a differential polynomial
//! in strictly earlier generators (anchored at the generator's birth and
//! pushed forward from there), and an exit polynomial — the element the
//! generator maps to across its death edge (zero by default; also in
//! strictly earlier generators). Evaluation at a node is the free
//! graded-commutative algebra on the generators alive there, truncated at
//! degree `N`, on the monomial basis ordered by ascending exponent vectors.
//!
//! The evaluation engine below is the single source of truth for nodewise
//! tables: Hirsch extensions append generators and re-evaluate, so a
//! presentation and its replay agree on the nose.

use serde::{Deserialize, Serialize};

use crate::cells::HalfOpenSupport;
use crate::cdga::nodewise::{NodeAlgebra, NodewiseAlgebra};
use crate::cdga::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::grid::EventGrid;
use crate::matrix::RatMatrix;
use crate::scalar::Rat;

/// One free generator.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FreeGen {
    pub name: String,
    pub degree: usize,
    pub support: HalfOpenSupport,
    /// Differential, a polynomial in strictly earlier generators, anchored
    /// at the birth node.
    #[serde(skip)]
    pub d: Poly,
    /// Image across the death edge, anchored at the death instant; must be
    /// zero for unbounded supports.
    #[serde(skip)]
    pub exit: Poly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePcdga {
    pub grid: EventGrid,
    pub max_degree: usize,
    pub gens: Vec<FreeGen>,
}

/// The nodewise tables of a free presentation together with the monomial
/// bases that index them.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub algebra: NodewiseAlgebra,
    /// `basis[v][k]` lists the monomials of degree `k` alive at node `v`,
    /// in ascending exponent order.
    pub basis: Vec<Vec<Vec<Monomial>>>,
}

impl Evaluation {
    pub fn index_of(&self, v: usize, k: usize, m: &Monomial) -> Option<usize> {
        self.basis[v][k].binary_search(m).ok()
    }

    pub fn poly_to_coords(&self, v: usize, k: usize, p: &Poly) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.basis[v][k].len()];
        for (c, m) in p.terms() {
            let idx = self.index_of(v, k, m).ok_or_else(|| {
                Error::invalid(format!(
                    "monomial {m} is not alive in degree {k} at node {v}"
                ))
            })?;
            out[idx] = &out[idx] + c;
        }
        Ok(out)
    }

    pub fn coords_to_poly(&self, v: usize, k: usize, coords: &[Rat]) -> Poly {
        Poly::from_terms(
            coords
                .iter()
                .zip(&self.basis[v][k])
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| (c.clone(), m.clone()))
                .collect(),
        )
    }
}

impl FreePcdga {
    /// The constant algebra `ℚ`.
    pub fn constant(grid: EventGrid, max_degree: usize) -> Self {
        FreePcdga {
            grid,
            max_degree,
            gens: Vec::new(),
        }
    }

    pub fn gen_degrees(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn gen_names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    fn spans(&self) -> Result<Vec<(usize, usize)>> {
        self.gens
            .iter()
            .map(|g| g.support.node_span(&self.grid))
            .collect()
    }

    /// Validate the static data and build the nodewise tables.
    pub fn evaluate(&self) -> Result<Evaluation> {
        let degrees = self.gen_degrees();
        let n = self.grid.node_count();
        let nmax = self.max_degree;
        let spans = self.spans()?;

        // static checks, with the offending generator named
        let mut seen = std::collections::HashSet::new();
        for (i, g) in self.gens.iter().enumerate() {
            if !seen.insert(g.name.clone()) {
                return Err(Error::invalid(format!("duplicate generator name {}", g.name)));
            }
            if g.degree == 0 {
                return Err(Error::invalid(format!(
                    "generator {} has degree 0; free persistent CDGAs are generated in positive degrees",
                    g.name
                )));
            }
            if let Some(top) = g.d.max_generator() {
                if top >= i {
                    return Err(Error::invalid(format!(
                        "d({}) may only involve earlier generators",
                        g.name
                    )));
                }
            }
            if !g.d.is_homogeneous(&degrees, g.degree + 1) {
                return Err(Error::invalid(format!(
                    "d({}) is not homogeneous of degree {}",
                    g.name,
                    g.degree + 1
                )));
            }
            if let Some(top) = g.exit.max_generator() {
                if top >= i {
                    return Err(Error::invalid(format!(
                        "the exit of {} may only involve earlier generators",
                        g.name
                    )));
                }
            }
            if !g.exit.is_homogeneous(&degrees, g.degree) {
                return Err(Error::invalid(format!(
                    "the exit of {} is not homogeneous of degree {}",
                    g.name, g.degree
                )));
            }
            if g.support.right.is_none() && !g.exit.is_zero() {
                return Err(Error::invalid(format!(
                    "generator {} never dies but has an exit",
                    g.name
                )));
            }
        }

        // monomial bases per node and degree
        let mut basis: Vec<Vec<Vec<Monomial>>> = Vec::with_capacity(n);
        for v in 0..n {
            let alive: Vec<usize> = (0..self.gens.len())
                .filter(|&i| spans[i].0 <= v && v <= spans[i].1)
                .collect();
            let mut per_degree: Vec<Vec<Monomial>> = vec![Vec::new(); nmax + 1];
            let mut stack = vec![0u32; self.gens.len()];
            enumerate_monomials(&alive, &degrees, nmax, 0, 0, &mut stack, &mut per_degree);
            for row in &mut per_degree {
                row.sort();
            }
            basis.push(per_degree);
        }
        let index_of = |v: usize, k: usize, m: &Monomial| -> Option<usize> {
            basis[v][k].binary_search(m).ok()
        };

        // multiplication tables
        let mut nodes: Vec<NodeAlgebra> = Vec::with_capacity(n);
        for v in 0..n {
            let dims: Vec<usize> = (0..=nmax).map(|k| basis[v][k].len()).collect();
            let mut mult = Vec::with_capacity(nmax + 1);
            for p in 0..=nmax {
                let mut row = Vec::with_capacity(nmax + 1 - p);
                for q in 0..=nmax - p {
                    let mut table = RatMatrix::zero(dims[p + q], dims[p] * dims[q]);
                    for (i, mi) in basis[v][p].iter().enumerate() {
                        for (j, mj) in basis[v][q].iter().enumerate() {
                            if let Some((sign, m)) = mi.mul(mj, &degrees) {
                                let idx = index_of(v, p + q, &m)
                                    .expect("products of alive monomials stay alive");
                                table.set(idx, i * dims[q] + j, sign);
                            }
                        }
                    }
                    row.push(table);
                }
                mult.push(row);
            }
            let unit = {
                let mut u = vec![Rat::zero(); dims[0]];
                let idx = index_of(v, 0, &Monomial::one()).expect("1 is always alive");
                u[idx] = Rat::one();
                u
            };
            nodes.push(NodeAlgebra {
                dims,
                unit,
                mult,
                // placeholder; filled in after the steps are known
                diff: Vec::new(),
            });
        }

        // steps: monomials translate unless a factor dies, in which case the
        // image is the ordered product of the factor images
        let mut steps: Vec<Vec<RatMatrix>> = Vec::with_capacity(n - 1);
        for v in 0..n - 1 {
            let mut per_degree = Vec::with_capacity(nmax + 1);
            for k in 0..=nmax {
                let mut s = RatMatrix::zero(nodes[v + 1].dims[k], nodes[v].dims[k]);
                for (col, m) in basis[v][k].iter().enumerate() {
                    let dies = m
                        .factors()
                        .iter()
                        .any(|&g| spans[g].1 == v);
                    if !dies {
                        if let Some(row) = index_of(v + 1, k, m) {
                            s.set(row, col, Rat::one());
                        } else {
                            unreachable!("surviving monomial must stay in the basis");
                        }
                        continue;
                    }
                    // expand through the exits
                    let mut acc = nodes[v + 1].unit.clone();
                    let mut acc_deg = 0usize;
                    let mut dead = false;
                    for g in m.factors() {
                        let img: Vec<Rat> = if spans[g].1 == v {
                            // exits are anchored at the death instant v + 1
                            poly_coords(&basis, v + 1, self.gens[g].degree, &self.gens[g].exit)?
                        } else {
                            let mono = Monomial::generator(g);
                            let mut e = vec![Rat::zero(); nodes[v + 1].dims[self.gens[g].degree]];
                            let idx = index_of(v + 1, self.gens[g].degree, &mono)
                                .expect("surviving factor stays alive");
                            e[idx] = Rat::one();
                            e
                        };
                        if crate::matrix::vec_is_zero(&img) {
                            dead = true;
                            break;
                        }
                        acc = nodes[v + 1].product(acc_deg, &acc, self.gens[g].degree, &img);
                        acc_deg += self.gens[g].degree;
                        if acc_deg > nmax {
                            dead = true;
                            break;
                        }
                    }
                    if !dead {
                        for (row, val) in acc.iter().enumerate() {
                            if !val.is_zero() {
                                s.set(row, col, val.clone());
                            }
                        }
                    }
                }
                per_degree.push(s);
            }
            steps.push(per_degree);
        }

        // generator differentials pushed forward from birth
        let mut gen_d: Vec<Vec<Option<Vec<Rat>>>> = vec![vec![None; n]; self.gens.len()];
        for (g, gen) in self.gens.iter().enumerate() {
            let (first, last) = spans[g];
            if gen.degree + 1 > nmax {
                for entry in gen_d[g].iter_mut().take(last + 1).skip(first) {
                    *entry = Some(Vec::new());
                }
                continue;
            }
            let mut cur = poly_coords(&basis, first, gen.degree + 1, &gen.d)?;
            gen_d[g][first] = Some(cur.clone());
            for v in first..last {
                cur = steps[v][gen.degree + 1].mul_vec(&cur);
                gen_d[g][v + 1] = Some(cur.clone());
            }
        }

        // differentials on monomials by the graded Leibniz rule
        for v in 0..n {
            let mut diff = Vec::with_capacity(nmax);
            for k in 0..nmax {
                let mut d = RatMatrix::zero(nodes[v].dims[k + 1], nodes[v].dims[k]);
                for (col, m) in basis[v][k].iter().enumerate() {
                    let factors = m.factors();
                    let mut total = vec![Rat::zero(); nodes[v].dims[k + 1]];
                    for pos in 0..factors.len() {
                        let g = factors[pos];
                        let dg = gen_d[g][v].as_ref().expect("factor is alive");
                        if dg.is_empty() || crate::matrix::vec_is_zero(dg) {
                            continue;
                        }
                        // prefix · d(g) · suffix with the prefix-degree sign
                        let prefix_deg: usize =
                            factors[..pos].iter().map(|&h| self.gens[h].degree).sum();
                        let sign = if prefix_deg % 2 == 0 { Rat::one() } else { -Rat::one() };
                        let prefix = monomial_coords(&basis, v, &factors[..pos], &degrees, &nodes[v]);
                        let suffix =
                            monomial_coords(&basis, v, &factors[pos + 1..], &degrees, &nodes[v]);
                        let left = nodes[v].product(prefix_deg, &prefix, self.gens[g].degree + 1, dg);
                        let suffix_deg: usize =
                            factors[pos + 1..].iter().map(|&h| self.gens[h].degree).sum();
                        let term = nodes[v].product(
                            prefix_deg + self.gens[g].degree + 1,
                            &left,
                            suffix_deg,
                            &suffix,
                        );
                        for (t, x) in total.iter_mut().zip(crate::matrix::vec_scale(&term, &sign)) {
                            *t += &x;
                        }
                    }
                    for (row, val) in total.iter().enumerate() {
                        if !val.is_zero() {
                            d.set(row, col, val.clone());
                        }
                    }
                }
                diff.push(d);
            }
            nodes[v].diff = diff;
        }

        // d² on generators first, so the culprit is named before the generic
        // validator complains
        for (g, gen) in self.gens.iter().enumerate() {
            if gen.degree + 2 > nmax {
                continue;
            }
            let (first, _) = spans[g];
            let dd = nodes[first].d(gen.degree + 1, gen_d[g][first].as_ref().unwrap());
            if !crate::matrix::vec_is_zero(&dd) {
                return Err(Error::invalid(format!(
                    "d²({}) ≠ 0 at the generator's birth",
                    gen.name
                )));
            }
        }

        let algebra = NodewiseAlgebra::new(self.grid.clone(), nmax, nodes, steps).map_err(|e| {
            Error::invalid(format!(
                "free presentation does not evaluate to a persistent CDGA: {e}"
            ))
        })?;

        Ok(Evaluation { algebra, basis })
    }
}

fn poly_coords(
    basis: &[Vec<Vec<Monomial>>],
    v: usize,
    k: usize,
    p: &Poly,
) -> Result<Vec<Rat>> {
    if k >= basis[v].len() {
        return Ok(Vec::new());
    }
    let mut out = vec![Rat::zero(); basis[v][k].len()];
    for (c, m) in p.terms() {
        let idx = basis[v][k].binary_search(m).map_err(|_| {
            Error::invalid(format!(
                "monomial {m} is not alive in degree {k} at node {v}"
            ))
        })?;
        out[idx] = &out[idx] + c;
    }
    Ok(out)
}

fn monomial_coords(
    basis: &[Vec<Vec<Monomial>>],
    v: usize,
    factors: &[usize],
    degrees: &[usize],
    _node: &NodeAlgebra,
) -> Vec<Rat> {
    let mut exps = vec![0u32; degrees.len()];
    for &g in factors {
        exps[g] += 1;
    }
    let m = Monomial::from_exps(exps);
    let k: usize = factors.iter().map(|&g| degrees[g]).sum();
    let mut out = vec![Rat::zero(); basis[v][k].len()];
    let idx = basis[v][k]
        .binary_search(&m)
        .expect("sub-monomials of alive monomials are alive");
    out[idx] = Rat::one();
    out
}

fn enumerate_monomials(
    alive: &[usize],
    degrees: &[usize],
    budget: usize,
    from: usize,
    acc_degree: usize,
    stack: &mut Vec<u32>,
    out: &mut [Vec<Monomial>],
) {
    out[acc_degree].push(Monomial::from_exps(stack.clone()));
    for (pos, &g) in alive.iter().enumerate().skip(from) {
        let d = degrees[g];
        if d == 0 || acc_degree + d > budget {
            continue;
        }
        let max_exp = if d % 2 == 1 { 1 } else { ((budget - acc_degree) / d) as u32 };
        for e in 1..=max_exp {
            stack[g] = e;
            enumerate_monomials(
                alive,
                degrees,
                budget,
                pos + 1,
                acc_degree + d * e as usize,
                stack,
                out,
            );
        }
        stack[g] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn grid01() -> EventGrid {
        EventGrid::from_ints(&[0, 1])
    }

    fn gen(name: &str, degree: usize, left: i64, right: Option<i64>, d: Poly) -> FreeGen {
        FreeGen {
            name: name.into(),
            degree,
            support: HalfOpenSupport::new(rat(left), right.map(rat)),
            d,
            exit: Poly::zero(),
        }
    }

    #[test]
    fn constant_algebra_is_the_line() {
        let a = FreePcdga::constant(grid01(), 4);
        let ev = a.evaluate().unwrap();
        for v in 0..4 {
            assert_eq!(ev.algebra.dim(0, v), 1);
            for k in 1..=4 {
                assert_eq!(ev.algebra.dim(k, v), 0);
            }
        }
    }

    #[test]
    fn free_on_one_even_generator_is_polynomial() {
        // Λ(x₂) truncated at 4: dims 1,0,1,0,1 (1, x, x²)
        let f = FreePcdga {
            grid: grid01(),
            max_degree: 4,
            gens: vec![gen("x", 2, 0, None, Poly::zero())],
        };
        let ev = f.evaluate().unwrap();
        for v in 0..4 {
            let dims: Vec<usize> = (0..=4).map(|k| ev.algebra.dim(k, v)).collect();
            assert_eq!(dims, vec![1, 0, 1, 0, 1]);
        }
        // H² = I[0,∞)
        let h2 = ev.algebra.cohomology(2).unwrap();
        assert_eq!(h2.module.dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn contractible_pair_has_trivial_cohomology() {
        // Λ(y₁, x₂; dy = x): dims 1,1,1,1,1 up to 4 and H = ℚ in degree 0
        let grid = grid01();
        let f = FreePcdga {
            grid: grid.clone(),
            max_degree: 4,
            gens: vec![
                gen("x", 2, 0, None, Poly::zero()),
                gen("y", 1, 0, None, Poly::generator(0)),
            ],
        };
        let ev = f.evaluate().unwrap();
        let dims: Vec<usize> = (0..=4).map(|k| ev.algebra.dim(k, 0)).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 1]);
        let h0 = ev.algebra.cohomology(0).unwrap();
        assert_eq!(h0.module.dims(), &[1, 1, 1, 1]);
        for k in 1..=3 {
            assert!(ev.algebra.cohomology(k).unwrap().module.is_zero(), "H^{k}");
        }
    }

    #[test]
    fn dying_generator_kills_its_monomials() {
        // e₂, e₃ on [0,1) with de₃ = e₂²: the S²-model dying at 1
        let grid = grid01();
        let f = FreePcdga {
            grid,
            max_degree: 6,
            gens: vec![
                gen("e2", 2, 0, Some(1), Poly::zero()),
                gen(
                    "e3",
                    3,
                    0,
                    Some(1),
                    Poly::parse("e2^2", &["e2"]).unwrap(),
                ),
            ],
        };
        let ev = f.evaluate().unwrap();
        // alive half: 1, 0, e2, e3, e2², e2e3, e2³
        let dims: Vec<usize> = (0..=6).map(|k| ev.algebra.dim(k, 0)).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 1]);
        // dead half: just ℚ
        let dims: Vec<usize> = (0..=6).map(|k| ev.algebra.dim(k, 2)).collect();
        assert_eq!(dims, vec![1, 0, 0, 0, 0, 0, 0]);
        // H² is the interval [0,1)
        let h2 = ev.algebra.cohomology(2).unwrap();
        assert_eq!(h2.module.dims(), &[1, 1, 0, 0]);
        // H⁴ dies with e2²: d(e3) = e2² makes it exact
        assert!(ev.algebra.cohomology(4).unwrap().module.is_zero());
    }

    #[test]
    fn violations_are_named() {
        let grid = grid01();
        // d referencing a later generator
        let f = FreePcdga {
            grid: grid.clone(),
            max_degree: 4,
            gens: vec![gen("y", 1, 0, None, Poly::generator(1))],
        };
        assert!(f.evaluate().is_err());
        // inhomogeneous differential
        let f = FreePcdga {
            grid: grid.clone(),
            max_degree: 4,
            gens: vec![
                gen("x", 2, 0, None, Poly::zero()),
                gen("y", 3, 0, None, Poly::generator(0)),
            ],
        };
        let err = f.evaluate().unwrap_err().to_string();
        assert!(err.contains('y'), "{err}");
        // d² ≠ 0: d(z) = x·y with d(y) = x makes d² = x² ≠ 0
        let f = FreePcdga {
            grid,
            max_degree: 6,
            gens: vec![
                gen("x", 2, 0, None, Poly::zero()),
                gen("y", 1, 0, None, Poly::generator(0)),
                gen(
                    "z",
                    2,
                    0,
                    None,
                    Poly::parse("x*y", &["x", "y", "z"]).unwrap(),
                ),
            ],
        };
        let err = f.evaluate().unwrap_err().to_string();
        assert!(err.contains('z'), "{err}");
    }

    #[test]
    fn exit_polynomials_glue() {
        // u on [0,1) exits onto w (alive throughout); both closed of degree 2
        let grid = grid01();
        let f = FreePcdga {
            grid,
            max_degree: 4,
            gens: vec![
                gen("w", 2, 0, None, Poly::zero()),
                FreeGen {
                    name: "u".into(),
                    degree: 2,
                    support: HalfOpenSupport::new(rat(0), Some(rat(1))),
                    d: Poly::zero(),
                    exit: Poly::generator(0),
                },
            ],
        };
        let ev = f.evaluate().unwrap();
        // crossing Germ(0) -> At(1): u ↦ w, u² ↦ w², uw ↦ w²
        let s2 = ev.algebra.step(2, 1);
        let u_idx = ev.index_of(1, 2, &Monomial::generator(1)).unwrap();
        let w_idx = ev.index_of(2, 2, &Monomial::generator(0)).unwrap();
        assert_eq!(s2.get(w_idx, u_idx), &rat(1));
        let u2 = ev.index_of(1, 4, &Monomial::from_exps(vec![0, 2])).unwrap();
        let w2 = ev.index_of(2, 4, &Monomial::from_exps(vec![2, 0])).unwrap();
        assert_eq!(ev.algebra.step(4, 1).get(w2, u2), &rat(1));
    }
}
