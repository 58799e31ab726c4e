//! Nodewise presentation of a persistent CDGA, truncated at degree `N`.
//!
//! At each node: a basis per degree, the unit, multiplication tables for
//! degree pairs landing within the truncation, and the differential. Along
//! each edge: one matrix per degree, required to be a map of differential
//! graded algebras. Products that would land above `N` are dropped, so all
//! conclusions drawn from this presentation are valid below the truncation
//! only; the operations that care (cohomology, cones) enforce their own
//! degree bounds.

use crate::complex::{PersComplex, PersComplexMap};
use crate::error::{Error, Result};
use crate::grid::EventGrid;
use crate::matrix::{vec_scale, RatMatrix};
use crate::module::PersModule;
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NodewiseAlgebra {
    grid: EventGrid,
    max_degree: usize,
    nodes: Vec<NodeAlgebra>,
    /// `steps[v][k]` maps degree `k` at node `v` to node `v + 1`.
    steps: Vec<Vec<RatMatrix>>,
}

/// The algebra at a single node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NodeAlgebra {
    /// Dimensions per degree `0..=N`.
    pub dims: Vec<usize>,
    /// Coordinates of `1` in degree 0.
    pub unit: Vec<Rat>,
    /// `mult[p][q]` (for `p + q ≤ N`) has shape `dim(p+q) × dim(p)·dim(q)`,
    /// column `i·dim(q) + j` holding `e_i · e_j`.
    pub mult: Vec<Vec<RatMatrix>>,
    /// `diff[k]` maps degree `k` to `k + 1`, for `k < N`.
    pub diff: Vec<RatMatrix>,
}

impl NodeAlgebra {
    pub fn product(&self, p: usize, a: &[Rat], q: usize, b: &[Rat]) -> Vec<Rat> {
        let n = self.dims.len() - 1;
        if p + q > n {
            return Vec::new();
        }
        let table = &self.mult[p][q];
        let mut out = vec![Rat::zero(); self.dims[p + q]];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let col = table.col(i * self.dims[q] + j);
                let scaled = vec_scale(&col, &(ai * bj));
                for (o, s) in out.iter_mut().zip(scaled) {
                    *o += &s;
                }
            }
        }
        out
    }

    pub fn d(&self, k: usize, a: &[Rat]) -> Vec<Rat> {
        if k + 1 >= self.dims.len() {
            return Vec::new();
        }
        self.diff[k].mul_vec(a)
    }
}

impl NodewiseAlgebra {
    pub fn new(
        grid: EventGrid,
        max_degree: usize,
        nodes: Vec<NodeAlgebra>,
        steps: Vec<Vec<RatMatrix>>,
    ) -> Result<Self> {
        let a = NodewiseAlgebra {
            grid,
            max_degree,
            nodes,
            steps,
        };
        a.validate()?;
        Ok(a)
    }

    /// The constant algebra `ℚ` (one-dimensional in degree 0 everywhere).
    pub fn constant_line(grid: EventGrid, max_degree: usize) -> Self {
        let n = grid.node_count();
        let mut dims = vec![0; max_degree + 1];
        dims[0] = 1;
        let node = NodeAlgebra {
            mult: (0..=max_degree)
                .map(|p| {
                    (0..=max_degree - p)
                        .map(|q| {
                            if p == 0 && q == 0 {
                                RatMatrix::identity(1)
                            } else {
                                RatMatrix::zero(dims[p + q], dims[p] * dims[q])
                            }
                        })
                        .collect()
                })
                .collect(),
            diff: (0..max_degree)
                .map(|k| RatMatrix::zero(dims[k + 1], dims[k]))
                .collect(),
            unit: vec![Rat::one()],
            dims,
        };
        let steps = vec![
            (0..=max_degree)
                .map(|k| {
                    if k == 0 {
                        RatMatrix::identity(1)
                    } else {
                        RatMatrix::zero(0, 0)
                    }
                })
                .collect();
            n - 1
        ];
        NodewiseAlgebra {
            grid,
            max_degree,
            nodes: vec![node; n],
            steps,
        }
    }

    pub fn grid(&self) -> &EventGrid {
        &self.grid
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn node(&self, v: usize) -> &NodeAlgebra {
        &self.nodes[v]
    }

    pub fn dim(&self, k: usize, v: usize) -> usize {
        self.nodes[v].dims[k]
    }

    pub fn step(&self, k: usize, v: usize) -> &RatMatrix {
        &self.steps[v][k]
    }

    pub fn composite_step(&self, k: usize, p: usize, q: usize) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dim(k, p));
        for v in p..q {
            m = &self.steps[v][k] * &m;
        }
        m
    }

    /// Truncate further, dropping everything above the new degree.
    pub fn truncated(&self, new_max: usize) -> Result<NodewiseAlgebra> {
        if new_max > self.max_degree {
            return Err(Error::invalid(
                "cannot raise the truncation degree of a nodewise algebra",
            ));
        }
        let nodes = self
            .nodes
            .iter()
            .map(|node| NodeAlgebra {
                dims: node.dims[..=new_max].to_vec(),
                unit: node.unit.clone(),
                mult: (0..=new_max)
                    .map(|p| (0..=new_max - p).map(|q| node.mult[p][q].clone()).collect())
                    .collect(),
                diff: node.diff[..new_max].to_vec(),
            })
            .collect();
        let steps = self
            .steps
            .iter()
            .map(|row| row[..=new_max].to_vec())
            .collect();
        NodewiseAlgebra::new(self.grid.clone(), new_max, nodes, steps)
    }

    /// The underlying persistent cochain complex (degrees `0..=N`; the
    /// differential out of degree `N` is truncated away, so cohomology is
    /// only trustworthy through degree `N - 1`).
    pub fn underlying_complex(&self) -> Result<PersComplex> {
        let n = self.grid.node_count();
        let modules = (0..=self.max_degree)
            .map(|k| {
                PersModule::new(
                    self.grid.clone(),
                    (0..n).map(|v| self.dim(k, v)).collect(),
                    (0..n - 1).map(|v| self.steps[v][k].clone()).collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let diffs = (0..self.max_degree)
            .map(|k| (0..n).map(|v| self.nodes[v].diff[k].clone()).collect())
            .collect();
        PersComplex::new(self.grid.clone(), self.max_degree, modules, diffs)
    }

    /// Degree-`k` cohomology; `k` must stay below the truncation degree.
    pub fn cohomology(&self, k: usize) -> Result<crate::complex::Cohomology> {
        if k + 1 > self.max_degree {
            return Err(Error::Truncation(k, self.max_degree.saturating_sub(1)));
        }
        self.underlying_complex()?.cohomology(k)
    }

    fn validate(&self) -> Result<()> {
        let n = self.grid.node_count();
        let nmax = self.max_degree;
        if self.nodes.len() != n || self.steps.len() != n - 1 {
            return Err(Error::shape("node or step count mismatch"));
        }
        for (v, node) in self.nodes.iter().enumerate() {
            let label = self.grid.node_label(v);
            if node.dims.len() != nmax + 1 {
                return Err(Error::shape(format!("dims at {label} must cover 0..=N")));
            }
            if node.unit.len() != node.dims[0] {
                return Err(Error::shape(format!("unit at {label} has the wrong size")));
            }
            if node.mult.len() != nmax + 1
                || node.mult.iter().enumerate().any(|(p, row)| row.len() != nmax + 1 - p)
            {
                return Err(Error::shape(format!("multiplication tables at {label}")));
            }
            for p in 0..=nmax {
                for q in 0..=nmax - p {
                    let t = &node.mult[p][q];
                    if t.rows() != node.dims[p + q] || t.cols() != node.dims[p] * node.dims[q] {
                        return Err(Error::shape(format!(
                            "mult table ({p},{q}) at {label} has the wrong shape"
                        )));
                    }
                }
            }
            if node.diff.len() != nmax {
                return Err(Error::shape(format!("differential at {label}")));
            }
            for k in 0..nmax {
                if node.diff[k].rows() != node.dims[k + 1] || node.diff[k].cols() != node.dims[k] {
                    return Err(Error::shape(format!(
                        "differential in degree {k} at {label} has the wrong shape"
                    )));
                }
            }

            // unit laws
            for k in 0..=nmax {
                for i in 0..node.dims[k] {
                    let mut e = vec![Rat::zero(); node.dims[k]];
                    e[i] = Rat::one();
                    if node.product(0, &node.unit, k, &e) != e
                        || node.product(k, &e, 0, &node.unit) != e
                    {
                        return Err(Error::invalid(format!("unit law fails at {label}")));
                    }
                }
            }
            // graded commutativity and associativity on basis elements
            for p in 0..=nmax {
                for q in 0..=nmax - p {
                    for i in 0..node.dims[p] {
                        for j in 0..node.dims[q] {
                            let mut ei = vec![Rat::zero(); node.dims[p]];
                            ei[i] = Rat::one();
                            let mut ej = vec![Rat::zero(); node.dims[q]];
                            ej[j] = Rat::one();
                            let ij = node.product(p, &ei, q, &ej);
                            let ji = node.product(q, &ej, p, &ei);
                            let sign = if (p * q) % 2 == 0 { Rat::one() } else { -Rat::one() };
                            if ij != vec_scale(&ji, &sign) {
                                return Err(Error::invalid(format!(
                                    "graded commutativity fails at {label} in degrees ({p},{q})"
                                )));
                            }
                            for r in 0..=nmax.saturating_sub(p + q) {
                                for l in 0..node.dims[r] {
                                    let mut el = vec![Rat::zero(); node.dims[r]];
                                    el[l] = Rat::one();
                                    let left = node.product(p + q, &ij, r, &el);
                                    let right =
                                        node.product(p, &ei, q + r, &node.product(q, &ej, r, &el));
                                    if left != right {
                                        return Err(Error::invalid(format!(
                                            "associativity fails at {label} in degrees ({p},{q},{r})"
                                        )));
                                    }
                                }
                            }
                            // Leibniz where the product's differential is visible
                            if p + q < nmax {
                                let lhs = node.d(p + q, &ij);
                                let da_b = node.product(p + 1, &node.d(p, &ei), q, &ej);
                                let a_db = node.product(p, &ei, q + 1, &node.d(q, &ej));
                                let sign = if p % 2 == 0 { Rat::one() } else { -Rat::one() };
                                let rhs: Vec<Rat> = da_b
                                    .iter()
                                    .zip(vec_scale(&a_db, &sign))
                                    .map(|(x, y)| x + &y)
                                    .collect();
                                if lhs != rhs {
                                    return Err(Error::invalid(format!(
                                        "Leibniz rule fails at {label} in degrees ({p},{q})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
            // d² = 0 and d(1) = 0
            for k in 0..nmax.saturating_sub(1) {
                let dd = &node.diff[k + 1] * &node.diff[k];
                if !dd.is_zero() {
                    return Err(Error::invalid(format!("d² ≠ 0 in degree {k} at {label}")));
                }
            }
            if nmax > 0 && !node.d(0, &node.unit).iter().all(Rat::is_zero) {
                return Err(Error::invalid(format!("d(1) ≠ 0 at {label}")));
            }
        }

        // steps: shapes, d-compatibility, multiplicativity, unit
        for v in 0..n - 1 {
            let label = format!(
                "{} -> {}",
                self.grid.node_label(v),
                self.grid.node_label(v + 1)
            );
            if self.steps[v].len() != nmax + 1 {
                return Err(Error::shape(format!("steps at {label}")));
            }
            for k in 0..=nmax {
                let s = &self.steps[v][k];
                if s.rows() != self.nodes[v + 1].dims[k] || s.cols() != self.nodes[v].dims[k] {
                    return Err(Error::shape(format!(
                        "step in degree {k} at {label} has the wrong shape"
                    )));
                }
            }
            if self.steps[v][0].mul_vec(&self.nodes[v].unit) != self.nodes[v + 1].unit {
                return Err(Error::invalid(format!("step does not preserve 1 at {label}")));
            }
            for k in 0..nmax {
                let lhs = &self.nodes[v + 1].diff[k] * &self.steps[v][k];
                let rhs = &self.steps[v][k + 1] * &self.nodes[v].diff[k];
                if lhs != rhs {
                    return Err(Error::invalid(format!(
                        "step does not commute with d in degree {k} at {label}"
                    )));
                }
            }
            for p in 0..=nmax {
                for q in 0..=nmax - p {
                    for i in 0..self.nodes[v].dims[p] {
                        for j in 0..self.nodes[v].dims[q] {
                            let mut ei = vec![Rat::zero(); self.nodes[v].dims[p]];
                            ei[i] = Rat::one();
                            let mut ej = vec![Rat::zero(); self.nodes[v].dims[q]];
                            ej[j] = Rat::one();
                            let lhs = self.steps[v][p + q]
                                .mul_vec(&self.nodes[v].product(p, &ei, q, &ej));
                            let rhs = self.nodes[v + 1].product(
                                p,
                                &self.steps[v][p].mul_vec(&ei),
                                q,
                                &self.steps[v][q].mul_vec(&ej),
                            );
                            if lhs != rhs {
                                return Err(Error::invalid(format!(
                                    "step is not multiplicative in degrees ({p},{q}) at {label}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map of persistent CDGAs in nodewise form: per-degree matrices that are
/// unital algebra maps commuting with differentials and steps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PersCdgaMap {
    source: NodewiseAlgebra,
    target: NodewiseAlgebra,
    /// `components[k][v]`.
    components: Vec<Vec<RatMatrix>>,
}

impl PersCdgaMap {
    pub fn new(
        source: NodewiseAlgebra,
        target: NodewiseAlgebra,
        components: Vec<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if source.grid() != target.grid() || source.max_degree() != target.max_degree() {
            return Err(Error::invalid("map endpoints live in different settings"));
        }
        let f = PersCdgaMap {
            source,
            target,
            components,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn source(&self) -> &NodewiseAlgebra {
        &self.source
    }

    pub fn target(&self) -> &NodewiseAlgebra {
        &self.target
    }

    pub fn component(&self, k: usize, v: usize) -> &RatMatrix {
        &self.components[k][v]
    }

    /// The underlying map of cochain complexes.
    pub fn underlying_map(&self) -> Result<PersComplexMap> {
        PersComplexMap::new(
            self.source.underlying_complex()?,
            self.target.underlying_complex()?,
            self.components.clone(),
        )
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.grid().node_count();
        let nmax = self.source.max_degree();
        if self.components.len() != nmax + 1
            || self.components.iter().any(|row| row.len() != n)
        {
            return Err(Error::shape("component layout mismatch"));
        }
        for k in 0..=nmax {
            for v in 0..n {
                let m = &self.components[k][v];
                if m.rows() != self.target.dim(k, v) || m.cols() != self.source.dim(k, v) {
                    return Err(Error::shape(format!(
                        "component in degree {k} at {} has the wrong shape",
                        self.source.grid().node_label(v)
                    )));
                }
            }
        }
        // d- and step-compatibility via the complex-map validator
        self.underlying_map()?;
        // unit and multiplicativity
        for v in 0..n {
            let label = self.source.grid().node_label(v);
            let sn = self.source.node(v);
            let tn = self.target.node(v);
            if self.components[0][v].mul_vec(&sn.unit) != tn.unit {
                return Err(Error::invalid(format!("map does not preserve 1 at {label}")));
            }
            for p in 0..=nmax {
                for q in 0..=nmax - p {
                    for i in 0..sn.dims[p] {
                        for j in 0..sn.dims[q] {
                            let mut ei = vec![Rat::zero(); sn.dims[p]];
                            ei[i] = Rat::one();
                            let mut ej = vec![Rat::zero(); sn.dims[q]];
                            ej[j] = Rat::one();
                            let lhs =
                                self.components[p + q][v].mul_vec(&sn.product(p, &ei, q, &ej));
                            let rhs = tn.product(
                                p,
                                &self.components[p][v].mul_vec(&ei),
                                q,
                                &self.components[q][v].mul_vec(&ej),
                            );
                            if lhs != rhs {
                                return Err(Error::invalid(format!(
                                    "map is not multiplicative in degrees ({p},{q}) at {label}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cohomology_agrees_with_the_underlying_complex() {
        let g = EventGrid::from_ints(&[0, 1]);
        let a = crate::fixtures::sphere_cohomology_cdga(&g, 4, Some(&crate::scalar::rat(1)))
            .unwrap();
        let u = a.underlying_complex().unwrap();
        for k in 0..4 {
            let lhs = a.cohomology(k).unwrap();
            let rhs = u.cohomology(k).unwrap();
            assert_eq!(lhs.module, rhs.module, "degree {k}");
            assert_eq!(lhs.barcode(), rhs.barcode(), "degree {k}");
        }
    }

    #[test]
    fn constant_line_validates() {
        let g = EventGrid::from_ints(&[0, 1]);
        let a = NodewiseAlgebra::constant_line(g, 4);
        a.validate().unwrap();
        let u = a.underlying_complex().unwrap();
        assert_eq!(u.module(0).dims(), &[1, 1, 1, 1]);
        let h0 = a.cohomology(0).unwrap();
        assert_eq!(h0.module.dims(), &[1, 1, 1, 1]);
        assert!(a.cohomology(4).is_err());
    }
}
