//! Persistence modules on an event grid, and their maps.
//!
//! A [`PersModule`] is a functor from the node chain of an [`EventGrid`] to
//! finite-dimensional rational vector spaces: a dimension per node and a step
//! matrix per consecutive node pair. Maps are node-indexed matrices that
//! commute with the steps, and kernels, images and cokernels are computed
//! nodewise with induced steps — persistence modules form an abelian
//! category and all of that structure is pointwise.
//!
//! Tameness and its failure modes live here too: a module is tame when every
//! `At(t) → Germ(t)` step is an isomorphism (constant on `[t_i, t_{i+1})`),
//! and a *right-closed* vector is one killed by every strictly later step —
//! exactly a nonzero kernel vector of some `At(t) → Germ(t)` step.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{DecoratedInterval, EventGrid};
use crate::matrix::RatMatrix;
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PersModule {
    grid: EventGrid,
    dims: Vec<usize>,
    /// `steps[i]` maps node `i` to node `i + 1`.
    steps: Vec<RatMatrix>,
}

impl PersModule {
    pub fn new(grid: EventGrid, dims: Vec<usize>, steps: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != grid.node_count() {
            return Err(Error::shape(format!(
                "expected {} node dimensions, found {}",
                grid.node_count(),
                dims.len()
            )));
        }
        if steps.len() + 1 != dims.len() {
            return Err(Error::shape(format!(
                "expected {} step matrices, found {}",
                dims.len() - 1,
                steps.len()
            )));
        }
        let steps = steps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.conform(dims[i + 1], dims[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PersModule { grid, dims, steps })
    }

    pub fn zero(grid: EventGrid) -> Self {
        let n = grid.node_count();
        PersModule {
            dims: vec![0; n],
            steps: vec![RatMatrix::zero(0, 0); n - 1],
            grid,
        }
    }

    /// The interval module of a decorated interval: dimension 1 on the nodes
    /// the interval contains, identity steps inside, zero crossing out.
    pub fn interval(grid: &EventGrid, interval: &DecoratedInterval) -> Result<Self> {
        let (first, last) = interval.node_span(grid)?;
        let n = grid.node_count();
        let dims: Vec<usize> = (0..n).map(|v| usize::from(v >= first && v <= last)).collect();
        let steps = (0..n - 1)
            .map(|v| {
                if v >= first && v + 1 <= last {
                    RatMatrix::identity(1)
                } else {
                    RatMatrix::zero(dims[v + 1], dims[v])
                }
            })
            .collect();
        Ok(PersModule {
            grid: grid.clone(),
            dims,
            steps,
        })
    }

    pub fn grid(&self) -> &EventGrid {
        &self.grid
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, node: usize) -> usize {
        self.dims[node]
    }

    pub fn node_count(&self) -> usize {
        self.dims.len()
    }

    pub fn step(&self, node: usize) -> &RatMatrix {
        &self.steps[node]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Composite structure map from node `p` to node `q` (`p ≤ q`).
    pub fn composite_step(&self, p: usize, q: usize) -> Result<RatMatrix> {
        if p > q || q >= self.node_count() {
            return Err(Error::invalid(format!("bad node pair ({p}, {q})")));
        }
        let mut m = RatMatrix::identity(self.dims[p]);
        for v in p..q {
            m = &self.steps[v] * &m;
        }
        Ok(m)
    }

    /// Rank of the composite step `p → q`.
    pub fn rank_invariant(&self, p: usize, q: usize) -> Result<usize> {
        Ok(self.composite_step(p, q)?.rank())
    }

    /// Dimension at a real point (`0` below the first grid value).
    pub fn dim_at_point(&self, r: &Rat) -> usize {
        self.grid.node_of_point(r).map_or(0, |v| self.dims[v])
    }

    pub fn direct_sum(grid: &EventGrid, summands: &[&PersModule]) -> Result<Self> {
        for m in summands {
            if m.grid != *grid {
                return Err(Error::GridMismatch);
            }
        }
        let n = grid.node_count();
        let dims = (0..n)
            .map(|v| summands.iter().map(|m| m.dims[v]).sum())
            .collect();
        let steps = (0..n - 1)
            .map(|v| {
                let blocks: Vec<&RatMatrix> = summands.iter().map(|m| &m.steps[v]).collect();
                RatMatrix::block_diag(&blocks)
            })
            .collect();
        Ok(PersModule {
            grid: grid.clone(),
            dims,
            steps,
        })
    }

    /// True when every `At(t) → Germ(t)` step is an isomorphism, i.e. the
    /// module is constant on each `[t_i, t_{i+1})`.
    pub fn is_tame(&self) -> bool {
        self.tameness_witness().is_none()
    }

    /// The first `At → Germ` step that fails to be an isomorphism, if any.
    pub fn tameness_witness(&self) -> Option<TamenessFailure> {
        for i in 0..self.grid.value_count() {
            let at = self.grid.at_node(i);
            let step = &self.steps[at];
            let kernel = step.kernel_basis();
            if kernel.cols() > 0 {
                return Some(TamenessFailure {
                    value_index: i,
                    value: self.grid.values()[i].clone(),
                    kind: TamenessFailureKind::NotInjective {
                        kernel_vector: kernel.col(0),
                    },
                });
            }
            if step.rank() < self.dims[at + 1] {
                return Some(TamenessFailure {
                    value_index: i,
                    value: self.grid.values()[i].clone(),
                    kind: TamenessFailureKind::NotSurjective,
                });
            }
        }
        None
    }

    /// For each grid value, a basis of the vectors alive at that instant and
    /// dead at every strictly later index. Empty iff the module has no
    /// right-closed point.
    pub fn right_closed_points(&self) -> Vec<RightClosedWitness> {
        let mut out = Vec::new();
        for i in 0..self.grid.value_count() {
            let at = self.grid.at_node(i);
            let kernel = self.steps[at].kernel_basis();
            if kernel.cols() > 0 {
                out.push(RightClosedWitness {
                    value_index: i,
                    value: self.grid.values()[i].clone(),
                    kernel_basis: kernel,
                });
            }
        }
        out
    }

    /// Local compactness on the grid representation.
    ///
    /// A right-closed vector obstructs local compactness outright. In its
    /// absence every bar of the module has an open right end, so in the
    /// continuum reading each element sits inside a finite sum of half-open
    /// interval submodules — a compact neighbourhood — and the positive
    /// verdict is sound for the class of modules a finite grid can present.
    pub fn local_compactness(&self) -> LocalCompactness {
        match self.right_closed_points().into_iter().next() {
            Some(witness) => LocalCompactness {
                locally_compact: false,
                witness: Some(witness),
            },
            None => LocalCompactness {
                locally_compact: true,
                witness: None,
            },
        }
    }

    /// Pull the module back along a refinement of its grid, extending
    /// constantly over the new nodes.
    pub fn refined_to(&self, finer: &EventGrid) -> Result<PersModule> {
        let embed = self.grid.embed_nodes(finer)?;
        let n = finer.node_count();
        let dims: Vec<usize> = embed
            .iter()
            .map(|c| c.map_or(0, |v| self.dims[v]))
            .collect();
        let mut steps = Vec::with_capacity(n - 1);
        for v in 0..n - 1 {
            let m = match (embed[v], embed[v + 1]) {
                (None, None) => RatMatrix::zero(0, 0),
                (None, Some(c)) => RatMatrix::zero(self.dims[c], 0),
                (Some(_), None) => unreachable!("zero region precedes the support"),
                (Some(a), Some(b)) if a == b => RatMatrix::identity(self.dims[a]),
                (Some(a), Some(b)) => self.composite_step(a, b)?,
            };
            steps.push(m);
        }
        PersModule::new(finer.clone(), dims, steps)
    }
}

/// Why a module fails to be tame at a grid value.
#[derive(Clone, Debug, Serialize)]
pub struct TamenessFailure {
    pub value_index: usize,
    pub value: Rat,
    pub kind: TamenessFailureKind,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TamenessFailureKind {
    /// The step `At(t) → Germ(t)` kills a vector: a right-closed point.
    NotInjective { kernel_vector: Vec<Rat> },
    /// The step `At(t) → Germ(t)` misses a vector: something is born strictly
    /// after `t`.
    NotSurjective,
}

/// A grid value together with a basis of the vectors dying right after it.
#[derive(Clone, Debug, Serialize)]
pub struct RightClosedWitness {
    pub value_index: usize,
    pub value: Rat,
    pub kernel_basis: RatMatrix,
}

/// Verdict of the local-compactness check.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCompactness {
    pub locally_compact: bool,
    pub witness: Option<RightClosedWitness>,
}

/// A map of persistence modules on a common grid: one matrix per node,
/// commuting with the steps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PersModuleMap {
    source: PersModule,
    target: PersModule,
    components: Vec<RatMatrix>,
}

impl PersModuleMap {
    pub fn new(
        source: PersModule,
        target: PersModule,
        components: Vec<RatMatrix>,
    ) -> Result<Self> {
        if source.grid != target.grid {
            return Err(Error::GridMismatch);
        }
        if components.len() != source.node_count() {
            return Err(Error::shape(format!(
                "expected {} components, found {}",
                source.node_count(),
                components.len()
            )));
        }
        let components = components
            .into_iter()
            .enumerate()
            .map(|(v, m)| m.conform(target.dims[v], source.dims[v]))
            .collect::<Result<Vec<_>>>()?;
        let map = PersModuleMap {
            source,
            target,
            components,
        };
        map.check_naturality()?;
        Ok(map)
    }

    fn check_naturality(&self) -> Result<()> {
        for v in 0..self.source.node_count() - 1 {
            let lhs = &self.target.steps[v] * &self.components[v];
            let rhs = &self.components[v + 1] * &self.source.steps[v];
            if lhs != rhs {
                return Err(Error::invalid(format!(
                    "map does not commute with the step {} -> {}",
                    self.source.grid.node_label(v),
                    self.source.grid.node_label(v + 1)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(m: &PersModule) -> Self {
        let components = m.dims.iter().map(|&d| RatMatrix::identity(d)).collect();
        PersModuleMap {
            source: m.clone(),
            target: m.clone(),
            components,
        }
    }

    pub fn zero_map(source: PersModule, target: PersModule) -> Result<Self> {
        if source.grid != target.grid {
            return Err(Error::GridMismatch);
        }
        let components = (0..source.node_count())
            .map(|v| RatMatrix::zero(target.dims[v], source.dims[v]))
            .collect();
        Ok(PersModuleMap {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &PersModule {
        &self.source
    }

    pub fn target(&self) -> &PersModule {
        &self.target
    }

    pub fn component(&self, node: usize) -> &RatMatrix {
        &self.components[node]
    }

    pub fn components(&self) -> &[RatMatrix] {
        &self.components
    }

    pub fn compose(&self, inner: &PersModuleMap) -> Result<PersModuleMap> {
        if inner.target != self.source {
            return Err(Error::invalid("composition targets do not match"));
        }
        let components = (0..self.components.len())
            .map(|v| &self.components[v] * &inner.components[v])
            .collect();
        Ok(PersModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().all(|m| m.kernel_basis().cols() == 0)
    }

    pub fn is_epi(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(v, m)| m.rank() == self.target.dims[v])
    }

    /// Nodewise kernel with induced steps, plus its inclusion into the source.
    pub fn kernel_module(&self) -> Result<(PersModule, PersModuleMap)> {
        let n = self.source.node_count();
        let bases: Vec<RatMatrix> = self.components.iter().map(RatMatrix::kernel_basis).collect();
        let dims: Vec<usize> = bases.iter().map(RatMatrix::cols).collect();
        let mut steps = Vec::with_capacity(n - 1);
        for v in 0..n - 1 {
            // the source step maps kernel into kernel; express it in the bases
            let pushed = &self.source.steps[v] * &bases[v];
            let induced = bases[v + 1]
                .solve_matrix(&pushed)?
                .ok_or_else(|| Error::invalid("kernel is not preserved by the steps"))?;
            steps.push(induced);
        }
        let module = PersModule::new(self.source.grid.clone(), dims, steps)?;
        let incl = PersModuleMap::new(module.clone(), self.source.clone(), bases)?;
        Ok((module, incl))
    }

    /// Nodewise image with induced steps, plus its inclusion into the target.
    ///
    /// The basis at each node consists of the pivot columns of the component
    /// matrix.
    pub fn image_module(&self) -> Result<(PersModule, PersModuleMap)> {
        let n = self.source.node_count();
        let mut bases = Vec::with_capacity(n);
        for m in &self.components {
            let pivots = m.rref().pivots;
            let basis = if pivots.is_empty() {
                RatMatrix::zero(m.rows(), 0)
            } else {
                RatMatrix::from_cols(pivots.iter().map(|&j| m.col(j)).collect())
            };
            bases.push(basis);
        }
        let dims: Vec<usize> = bases.iter().map(RatMatrix::cols).collect();
        let mut steps = Vec::with_capacity(n - 1);
        for v in 0..n - 1 {
            let pushed = &self.target.steps[v] * &bases[v];
            let induced = bases[v + 1]
                .solve_matrix(&pushed)?
                .ok_or_else(|| Error::invalid("image is not preserved by the steps"))?;
            steps.push(induced);
        }
        let module = PersModule::new(self.source.grid.clone(), dims, steps)?;
        let incl = PersModuleMap::new(module.clone(), self.target.clone(), bases)?;
        Ok((module, incl))
    }

    /// Nodewise cokernel with induced steps, plus the projection from the
    /// target.
    pub fn cokernel_module(&self) -> Result<(PersModule, PersModuleMap)> {
        let n = self.source.node_count();
        let mut projections = Vec::with_capacity(n);
        let mut sections = Vec::with_capacity(n);
        for (v, m) in self.components.iter().enumerate() {
            let q = Subquotient::cokernel(m);
            debug_assert_eq!(q.projection.cols(), self.target.dims[v]);
            projections.push(q.projection);
            sections.push(q.section);
        }
        let dims: Vec<usize> = projections.iter().map(RatMatrix::rows).collect();
        let mut steps = Vec::with_capacity(n - 1);
        for v in 0..n - 1 {
            let induced = &(&projections[v + 1] * &self.target.steps[v]) * &sections[v];
            steps.push(induced);
        }
        let module = PersModule::new(self.source.grid.clone(), dims, steps)?;
        let proj = PersModuleMap::new(self.target.clone(), module.clone(), projections)?;
        Ok((module, proj))
    }
}

/// Quotient of a coordinate space by the column span of a matrix: the
/// projection onto a chosen complement and a section picking representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// `q × n`, kernel exactly the column span.
    pub projection: RatMatrix,
    /// `n × q`, `projection * section = identity`.
    pub section: RatMatrix,
}

impl Subquotient {
    /// Quotient of `ℚ^rows(m)` by the column span of `m`.
    ///
    /// The complement is spanned by the unit vectors at the non-pivot
    /// coordinates of the row space, making the projection deterministic.
    pub fn cokernel(m: &RatMatrix) -> Subquotient {
        let n = m.rows();
        let rref = m.transpose().rref();
        let pivots = &rref.pivots; // coordinates spanned by the image
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        // reduce a vector modulo the row space, then read off free coords
        let mut projection = RatMatrix::zero(free.len(), n);
        for (out_row, &fc) in free.iter().enumerate() {
            projection.set(out_row, fc, Rat::one());
            for (r, &pc) in pivots.iter().enumerate() {
                // subtracting v[pc] * row_r kills the pivot coordinate and
                // adjusts the free ones
                let adj = -rref.reduced.get(r, fc);
                if !adj.is_zero() {
                    projection.set(out_row, pc, adj);
                }
            }
        }
        let mut section = RatMatrix::zero(n, free.len());
        for (j, &fc) in free.iter().enumerate() {
            section.set(fc, j, Rat::one());
        }
        Subquotient { projection, section }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn grid01() -> EventGrid {
        EventGrid::from_ints(&[0, 1])
    }

    fn half_open_01() -> PersModule {
        PersModule::interval(&grid01(), &DecoratedInterval::half_open(rat(0), rat(1))).unwrap()
    }

    fn from_zero_on() -> PersModule {
        PersModule::interval(&grid01(), &DecoratedInterval::from_on(rat(0))).unwrap()
    }

    #[test]
    fn interval_module_dims() {
        let g = grid01();
        assert_eq!(half_open_01().dims(), &[1, 1, 0, 0]);
        let closed =
            PersModule::interval(&g, &DecoratedInterval::closed(rat(0), rat(1))).unwrap();
        assert_eq!(closed.dims(), &[1, 1, 1, 0]);
        assert_eq!(from_zero_on().dims(), &[1, 1, 1, 1]);
        // off-grid endpoint is a usage error
        assert!(PersModule::interval(
            &g,
            &DecoratedInterval::half_open(Rat::from_frac(1, 2), rat(1))
        )
        .is_err());
    }

    #[test]
    fn direct_sum_is_blockwise() {
        let g = grid01();
        let s = PersModule::direct_sum(&g, &[&half_open_01(), &from_zero_on()]).unwrap();
        assert_eq!(s.dims(), &[2, 2, 1, 1]);
        let empty = PersModule::direct_sum(&g, &[]).unwrap();
        assert!(empty.is_zero());
        let doubled = PersModule::direct_sum(&g, &[&from_zero_on(), &from_zero_on()]).unwrap();
        assert_eq!(doubled.dims(), &[2, 2, 2, 2]);
    }

    #[test]
    fn rank_invariant_examples() {
        let m = half_open_01();
        assert_eq!(m.rank_invariant(0, 2).unwrap(), 0);
        let inf = from_zero_on();
        for p in 0..4 {
            for q in p..4 {
                assert_eq!(inf.rank_invariant(p, q).unwrap(), 1);
            }
        }
        assert!(m.rank_invariant(2, 0).is_err());
    }

    #[test]
    fn tameness_of_decorations() {
        let g = grid01();
        assert!(half_open_01().is_tame());
        let closed =
            PersModule::interval(&g, &DecoratedInterval::closed(rat(0), rat(1))).unwrap();
        assert!(!closed.is_tame());
        let open = PersModule::interval(&g, &DecoratedInterval::open(rat(0), rat(1))).unwrap();
        assert!(!open.is_tame());
    }

    #[test]
    fn right_closed_points_of_closed_interval() {
        let g = grid01();
        let closed =
            PersModule::interval(&g, &DecoratedInterval::closed(rat(0), rat(1))).unwrap();
        let pts = closed.right_closed_points();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].value, rat(1));
        assert_eq!(pts[0].kernel_basis.cols(), 1);

        assert!(half_open_01().right_closed_points().is_empty());

        let doubled = PersModule::direct_sum(&g, &[&closed, &closed]).unwrap();
        let pts = doubled.right_closed_points();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].kernel_basis.cols(), 2);
    }

    #[test]
    fn local_compactness_verdicts() {
        let g = grid01();
        let closed =
            PersModule::interval(&g, &DecoratedInterval::closed(rat(0), rat(1))).unwrap();
        let v = closed.local_compactness();
        assert!(!v.locally_compact);
        assert_eq!(v.witness.unwrap().value, rat(1));

        assert!(half_open_01().local_compactness().locally_compact);
        let open = PersModule::interval(&g, &DecoratedInterval::open(rat(0), rat(1))).unwrap();
        assert!(open.local_compactness().locally_compact);
        assert!(!open.is_tame());
    }

    #[test]
    fn kernel_image_cokernel_of_identity_and_zero() {
        let m = from_zero_on();
        let id = PersModuleMap::identity(&m);
        let (k, _) = id.kernel_module().unwrap();
        assert!(k.is_zero());
        let (im, _) = id.image_module().unwrap();
        assert_eq!(im.dims(), m.dims());
        let (coker, _) = id.cokernel_module().unwrap();
        assert!(coker.is_zero());

        let z = PersModuleMap::zero_map(m.clone(), m.clone()).unwrap();
        let (k, incl) = z.kernel_module().unwrap();
        assert_eq!(k.dims(), m.dims());
        assert!(incl.is_mono());
        let (coker, proj) = z.cokernel_module().unwrap();
        assert_eq!(coker.dims(), m.dims());
        assert!(proj.is_epi());
    }

    #[test]
    fn kernel_of_projection_is_late_bar() {
        // projection I[0,inf) -> I[0,1), identity where both live
        let src = from_zero_on();
        let tgt = half_open_01();
        let comps = vec![
            RatMatrix::identity(1),
            RatMatrix::identity(1),
            RatMatrix::zero(0, 1),
            RatMatrix::zero(0, 1),
        ];
        let f = PersModuleMap::new(src, tgt, comps).unwrap();
        let (k, _) = f.kernel_module().unwrap();
        // the kernel is the bar [1, inf)
        assert_eq!(k.dims(), &[0, 0, 1, 1]);
        // exactness bookkeeping at each node
        let (im, _) = f.image_module().unwrap();
        let (coker, _) = f.cokernel_module().unwrap();
        for v in 0..4 {
            assert_eq!(k.dim(v) + im.dim(v), f.source().dim(v));
            assert_eq!(im.dim(v) + coker.dim(v), f.target().dim(v));
        }
    }

    #[test]
    fn refinement_extends_constantly() {
        let m = half_open_01();
        let finer = m.grid().refined(&[Rat::from_frac(1, 2), rat(2)]).unwrap();
        let r = m.refined_to(&finer).unwrap();
        assert_eq!(r.dims(), &[1, 1, 1, 1, 0, 0, 0, 0]);
        assert!(r.is_tame());
        assert_eq!(r.dim_at_point(&Rat::from_frac(3, 4)), 1);
        assert_eq!(m.dim_at_point(&Rat::from_frac(3, 4)), 1);
    }

    #[test]
    fn non_commuting_map_is_rejected() {
        let src = from_zero_on();
        let tgt = half_open_01();
        let comps = vec![
            RatMatrix::identity(1),
            RatMatrix::zero(1, 1), // breaks the square over [0, germ 0]
            RatMatrix::zero(0, 1),
            RatMatrix::zero(0, 1),
        ];
        assert!(PersModuleMap::new(src, tgt, comps).is_err());
    }

    #[test]
    fn subquotient_projection_kills_exactly_the_span() {
        let m = RatMatrix::from_int_rows(&[&[1, 0], &[1, 0], &[0, 0]]);
        let q = Subquotient::cokernel(&m);
        assert_eq!(q.projection.rows(), 2);
        // the span of (1,1,0) dies
        assert!(crate::matrix::vec_is_zero(
            &q.projection.mul_vec(&[rat(2), rat(2), rat(0)])
        ));
        // projection ∘ section = id
        assert!((&q.projection * &q.section).is_identity());
    }
}
