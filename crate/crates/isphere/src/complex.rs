//! Persistent cochain complexes, interval spheres and disks, and Hom spaces.
//!
//! A [`PersComplex`] is a graded persistence module `X^0, …, X^N` with a
//! degree-raising differential commuting with every step map; `N` is the
//! truncation degree and degrees above it are zero. The building blocks of
//! the whole theory are the *interval sphere* `S^k[s,t)` — a single
//! degree-`k` line born at `s` that becomes the boundary of a degree-`k-1`
//! line from `t` on — and the *persistent disk* `D^k_s`, an acyclic pair of
//! lines born at `s`. Maps out of them are plain vector-space data:
//!
//! ```text
//!   Hom(D^k_s, X)      ≅  X^{k-1}(s)
//!   Hom(S^k[s,t), X)   ≅  Z X^k(s) ×_{Z X^k(t)} X^{k-1}(t)
//! ```
//!
//! for `k ≥ 1`, and that identification is what feeds the gap-map
//! characterizations of the model-structure classes.

use crate::barcode::{barcode, BarcodeDecomposition, DecoratedBarcode};
use crate::error::{Error, Result};
use crate::grid::{DecoratedInterval, Endpoint, EventGrid};
use crate::matrix::RatMatrix;
use crate::module::{PersModule, PersModuleMap, Subquotient};
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PersComplex {
    grid: EventGrid,
    max_degree: usize,
    /// `modules[k]` is the degree-`k` persistence module, `0 ≤ k ≤ N`.
    modules: Vec<PersModule>,
    /// `diffs[k][v]` maps degree `k` to degree `k + 1` at node `v`,
    /// `0 ≤ k < N`. The differential out of degree `N` is zero.
    diffs: Vec<Vec<RatMatrix>>,
}

impl PersComplex {
    pub fn new(
        grid: EventGrid,
        max_degree: usize,
        modules: Vec<PersModule>,
        diffs: Vec<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if modules.len() != max_degree + 1 {
            return Err(Error::shape(format!(
                "expected {} graded modules, found {}",
                max_degree + 1,
                modules.len()
            )));
        }
        for m in &modules {
            if m.grid() != &grid {
                return Err(Error::GridMismatch);
            }
        }
        if diffs.len() != max_degree {
            return Err(Error::shape(format!(
                "expected {} differentials, found {}",
                max_degree,
                diffs.len()
            )));
        }
        let n = grid.node_count();
        let mut conformed = Vec::with_capacity(diffs.len());
        for (k, per_node) in diffs.into_iter().enumerate() {
            if per_node.len() != n {
                return Err(Error::shape(format!(
                    "differential in degree {k} needs {n} node matrices"
                )));
            }
            let per_node = per_node
                .into_iter()
                .enumerate()
                .map(|(v, m)| m.conform(modules[k + 1].dim(v), modules[k].dim(v)))
                .collect::<Result<Vec<_>>>()?;
            conformed.push(per_node);
        }
        let x = PersComplex {
            grid,
            max_degree,
            modules,
            diffs: conformed,
        };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<()> {
        let n = self.grid.node_count();
        for k in 0..self.max_degree {
            for v in 0..n {
                if k + 1 < self.max_degree {
                    let dd = &self.diffs[k + 1][v] * &self.diffs[k][v];
                    if !dd.is_zero() {
                        return Err(Error::invalid(format!(
                            "d² ≠ 0 in degree {k} {}",
                            self.grid.node_label(v)
                        )));
                    }
                }
                if v + 1 < n {
                    let lhs = self.modules[k + 1].step(v) * &self.diffs[k][v];
                    let rhs = &self.diffs[k][v + 1] * self.modules[k].step(v);
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "differential in degree {k} does not commute with the step {} -> {}",
                            self.grid.node_label(v),
                            self.grid.node_label(v + 1)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(grid: EventGrid, max_degree: usize) -> Self {
        let n = grid.node_count();
        let modules = vec![PersModule::zero(grid.clone()); max_degree + 1];
        let diffs = vec![vec![RatMatrix::zero(0, 0); n]; max_degree];
        PersComplex {
            grid,
            max_degree,
            modules,
            diffs,
        }
    }

    pub fn grid(&self) -> &EventGrid {
        &self.grid
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn module(&self, k: usize) -> &PersModule {
        &self.modules[k]
    }

    pub fn modules(&self) -> &[PersModule] {
        &self.modules
    }

    pub fn dim(&self, k: usize, v: usize) -> usize {
        self.modules[k].dim(v)
    }

    /// Dimension with out-of-range degrees reading as zero.
    pub fn dim_signed(&self, k: isize, v: usize) -> usize {
        if k < 0 || k as usize > self.max_degree {
            0
        } else {
            self.dim(k as usize, v)
        }
    }

    /// Differential `X^k(v) → X^{k+1}(v)`, zero-shaped outside `0 ≤ k < N`.
    pub fn diff(&self, k: isize, v: usize) -> RatMatrix {
        if k >= 0 && (k as usize) < self.max_degree {
            self.diffs[k as usize][v].clone()
        } else {
            RatMatrix::zero(self.dim_signed(k + 1, v), self.dim_signed(k, v))
        }
    }

    /// Step `X^k(v) → X^k(v+1)`, zero-shaped outside the degree range.
    pub fn step(&self, k: isize, v: usize) -> RatMatrix {
        if k >= 0 && k as usize <= self.max_degree {
            self.modules[k as usize].step(v).clone()
        } else {
            RatMatrix::zero(0, 0)
        }
    }

    /// Composite step `X^k(p) → X^k(q)`.
    pub fn composite_step(&self, k: isize, p: usize, q: usize) -> Result<RatMatrix> {
        if k < 0 || k as usize > self.max_degree {
            return Ok(RatMatrix::zero(0, 0));
        }
        self.modules[k as usize].composite_step(p, q)
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(PersModule::is_zero)
    }

    /// Tame in every degree.
    pub fn is_tame(&self) -> bool {
        self.modules.iter().all(PersModule::is_tame)
    }

    /// First tameness failure over all degrees, if any.
    pub fn tameness_witness(&self) -> Option<(usize, crate::module::TamenessFailure)> {
        self.modules
            .iter()
            .enumerate()
            .find_map(|(k, m)| m.tameness_witness().map(|w| (k, w)))
    }

    /// The differential out of degree `k` as a module map (zero when `k = N`).
    pub fn diff_as_map(&self, k: usize) -> PersModuleMap {
        let n = self.grid.node_count();
        let target = if k + 1 <= self.max_degree {
            self.modules[k + 1].clone()
        } else {
            PersModule::zero(self.grid.clone())
        };
        let comps = (0..n).map(|v| self.diff(k as isize, v)).collect();
        PersModuleMap::new(self.modules[k].clone(), target, comps)
            .expect("differential is a valid module map")
    }

    /// The module of degree-`k` cocycles with its inclusion.
    ///
    /// At `k = N` every vector is a cocycle because the differential out of
    /// the top degree is truncated away; for complexes that stand in for
    /// something unbounded, treat the top degree as provisional.
    pub fn cocycles(&self, k: usize) -> Result<(PersModule, PersModuleMap)> {
        if k > self.max_degree {
            return Err(Error::Truncation(k, self.max_degree));
        }
        self.diff_as_map(k).kernel_module()
    }

    /// Degree-`k` cohomology with induced steps and all per-node bases needed
    /// to express classes.
    pub fn cohomology(&self, k: usize) -> Result<Cohomology> {
        if k > self.max_degree {
            return Err(Error::Truncation(k, self.max_degree));
        }
        let n = self.grid.node_count();
        let mut nodes = Vec::with_capacity(n);
        for v in 0..n {
            let z_basis = self.diff(k as isize, v).kernel_basis();
            let b = self.diff(k as isize - 1, v);
            // boundaries expressed in cocycle coordinates
            let b_in_z = z_basis
                .solve_matrix(&b)
                .expect("shape")
                .expect("boundaries are cocycles");
            let q = Subquotient::cokernel(&b_in_z);
            nodes.push(CohomologyNode {
                z_basis,
                projection: q.projection,
                section: q.section,
            });
        }
        let dims: Vec<usize> = nodes.iter().map(|c| c.projection.rows()).collect();
        let mut steps = Vec::with_capacity(n - 1);
        for v in 0..n - 1 {
            // push cocycles forward, re-express, project
            let pushed = &self.step(k as isize, v) * &nodes[v].z_basis;
            let in_z = nodes[v + 1]
                .z_basis
                .solve_matrix(&pushed)
                .expect("shape")
                .expect("steps preserve cocycles");
            let h_of_reps = &nodes[v + 1].projection * &in_z;
            steps.push(&h_of_reps * &nodes[v].section);
        }
        let module = PersModule::new(self.grid.clone(), dims, steps)?;
        let decomposition = barcode(&module);
        Ok(Cohomology {
            degree: k,
            module,
            decomposition,
            nodes,
        })
    }

    pub fn direct_sum(grid: &EventGrid, max_degree: usize, parts: &[&PersComplex]) -> Result<Self> {
        for p in parts {
            if p.grid() != grid {
                return Err(Error::GridMismatch);
            }
            if p.max_degree != max_degree {
                return Err(Error::shape("direct sum needs a common truncation degree"));
            }
        }
        let n = grid.node_count();
        let mut modules = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mods: Vec<&PersModule> = parts.iter().map(|p| p.module(k)).collect();
            modules.push(PersModule::direct_sum(grid, &mods)?);
        }
        let diffs = (0..max_degree)
            .map(|k| {
                (0..n)
                    .map(|v| {
                        let blocks: Vec<&RatMatrix> =
                            parts.iter().map(|p| &p.diffs[k][v]).collect();
                        RatMatrix::block_diag(&blocks)
                    })
                    .collect()
            })
            .collect();
        PersComplex::new(grid.clone(), max_degree, modules, diffs)
    }

    /// The interval sphere `S^k[s,t)` (`t = None` means `∞`).
    ///
    /// Degree `k` is an interval line from `s` on; degree `k-1` appears at
    /// `t` and the differential is the identity from there.
    pub fn sphere(
        grid: &EventGrid,
        k: usize,
        s: &Rat,
        t: Option<&Rat>,
        max_degree: usize,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid(
                "degree-0 spheres have no disk to include into; use an interval in degree 0",
            ));
        }
        if k > max_degree {
            return Err(Error::Truncation(k, max_degree));
        }
        grid.at_node_of(s)?;
        let top = PersModule::interval(grid, &DecoratedInterval::from_on(s.clone()))?;
        let (bottom, t_at) = match t {
            None => (PersModule::zero(grid.clone()), None),
            Some(t) => {
                if t <= s {
                    return Err(Error::invalid("sphere needs s < t"));
                }
                let at = grid.at_node_of(t)?;
                (
                    PersModule::interval(grid, &DecoratedInterval::from_on(t.clone()))?,
                    Some(at),
                )
            }
        };
        let n = grid.node_count();
        let mut modules = vec![PersModule::zero(grid.clone()); max_degree + 1];
        modules[k] = top;
        modules[k - 1] = bottom;
        let mut diffs: Vec<Vec<RatMatrix>> = (0..max_degree)
            .map(|kk| {
                (0..n)
                    .map(|v| RatMatrix::zero(modules[kk + 1].dim(v), modules[kk].dim(v)))
                    .collect()
            })
            .collect();
        if let Some(t_at) = t_at {
            for v in t_at..n {
                diffs[k - 1][v] = RatMatrix::identity(1);
            }
        }
        PersComplex::new(grid.clone(), max_degree, modules, diffs)
    }

    /// The persistent disk `D^k_s`: degrees `k-1` and `k` both alive from `s`
    /// with identity differential. `D^0` is zero by convention.
    pub fn disk(grid: &EventGrid, k: usize, s: &Rat, max_degree: usize) -> Result<Self> {
        if k == 0 {
            return Ok(PersComplex::zero(grid.clone(), max_degree));
        }
        if k > max_degree {
            return Err(Error::Truncation(k, max_degree));
        }
        let s_at = grid.at_node_of(s)?;
        let line = PersModule::interval(grid, &DecoratedInterval::from_on(s.clone()))?;
        let n = grid.node_count();
        let mut modules = vec![PersModule::zero(grid.clone()); max_degree + 1];
        modules[k] = line.clone();
        modules[k - 1] = line;
        let mut diffs: Vec<Vec<RatMatrix>> = (0..max_degree)
            .map(|kk| {
                (0..n)
                    .map(|v| RatMatrix::zero(modules[kk + 1].dim(v), modules[kk].dim(v)))
                    .collect()
            })
            .collect();
        for v in s_at..n {
            diffs[k - 1][v] = RatMatrix::identity(1);
        }
        PersComplex::new(grid.clone(), max_degree, modules, diffs)
    }

    /// A decorated interval placed in a single degree with zero differential.
    pub fn interval_tensor(
        grid: &EventGrid,
        interval: &DecoratedInterval,
        k: usize,
        max_degree: usize,
    ) -> Result<Self> {
        if k > max_degree {
            return Err(Error::Truncation(k, max_degree));
        }
        let n = grid.node_count();
        let mut modules = vec![PersModule::zero(grid.clone()); max_degree + 1];
        modules[k] = PersModule::interval(grid, interval)?;
        let diffs = (0..max_degree)
            .map(|kk| {
                (0..n)
                    .map(|v| RatMatrix::zero(modules[kk + 1].dim(v), modules[kk].dim(v)))
                    .collect()
            })
            .collect();
        PersComplex::new(grid.clone(), max_degree, modules, diffs)
    }

    /// The half-open `[s,t)` placed in degrees `k-1` and `k` with identity
    /// differential — the interval reading of a disk over `[s,t)`.
    pub fn interval_disk(
        grid: &EventGrid,
        interval: &DecoratedInterval,
        k: usize,
        max_degree: usize,
    ) -> Result<Self> {
        if k == 0 || k > max_degree {
            return Err(Error::invalid("interval disk needs 1 ≤ k ≤ N"));
        }
        let line = PersModule::interval(grid, interval)?;
        let n = grid.node_count();
        let mut modules = vec![PersModule::zero(grid.clone()); max_degree + 1];
        modules[k] = line.clone();
        modules[k - 1] = line;
        let diffs = (0..max_degree)
            .map(|kk| {
                (0..n)
                    .map(|v| {
                        if kk == k - 1 {
                            RatMatrix::identity(modules[k].dim(v))
                        } else {
                            RatMatrix::zero(modules[kk + 1].dim(v), modules[kk].dim(v))
                        }
                    })
                    .collect()
            })
            .collect();
        PersComplex::new(grid.clone(), max_degree, modules, diffs)
    }

    /// Sphere complex of a graded persistence module: one interval sphere per
    /// bar of each degree. Every graded piece must be tame.
    pub fn sphere_of_module(
        grid: &EventGrid,
        graded: &[PersModule],
        max_degree: usize,
    ) -> Result<Self> {
        let mut parts = Vec::new();
        for (k, m) in graded.iter().enumerate() {
            for (s, t) in half_open_bars(m, k)? {
                let part = if k == 0 {
                    let interval = match &t {
                        Some(t) => DecoratedInterval::half_open(s.clone(), t.clone()),
                        None => DecoratedInterval::from_on(s.clone()),
                    };
                    PersComplex::interval_tensor(grid, &interval, 0, max_degree)?
                } else {
                    PersComplex::sphere(grid, k, &s, t.as_ref(), max_degree)?
                };
                parts.push(part);
            }
        }
        let refs: Vec<&PersComplex> = parts.iter().collect();
        PersComplex::direct_sum(grid, max_degree, &refs)
    }

    /// Disk complex of a graded persistence module: one disk `D^k_s` per bar
    /// `[s,t)` in degree `k ≥ 1` (degree 0 contributes nothing).
    ///
    /// A bar with a finite right endpoint is flagged in the returned notes:
    /// its disk only remembers the left endpoint, and the interval reading
    /// `[s,t)` in degrees `k-1`, `k` (see [`interval_disk`](Self::interval_disk))
    /// is a defensible alternative.
    pub fn disk_of_module(
        grid: &EventGrid,
        graded: &[PersModule],
        max_degree: usize,
    ) -> Result<(Self, Vec<String>)> {
        let mut parts = Vec::new();
        let mut notes = Vec::new();
        for (k, m) in graded.iter().enumerate() {
            for (s, t) in half_open_bars(m, k)? {
                if k == 0 {
                    continue;
                }
                if let Some(t) = &t {
                    notes.push(format!(
                        "degree-{k} bar [{s}, {t}) contributes the disk at {s}; \
                         the bounded reading would be the interval disk on [{s}, {t})"
                    ));
                }
                parts.push(PersComplex::disk(grid, k, &s, max_degree)?);
            }
        }
        let refs: Vec<&PersComplex> = parts.iter().collect();
        Ok((PersComplex::direct_sum(grid, max_degree, &refs)?, notes))
    }

    /// Nodewise quotient by a monomorphic subcomplex, with the projection.
    pub fn quotient(&self, sub: &PersComplexMap) -> Result<(PersComplex, PersComplexMap)> {
        if sub.target() != self {
            return Err(Error::invalid("subcomplex map must land in this complex"));
        }
        if !sub.is_mono() {
            return Err(Error::hypothesis("quotient requires a monomorphism"));
        }
        let n = self.grid.node_count();
        let mut quots: Vec<Vec<Subquotient>> = Vec::with_capacity(self.max_degree + 1);
        for k in 0..=self.max_degree {
            quots.push(
                (0..n)
                    .map(|v| Subquotient::cokernel(sub.component(k, v)))
                    .collect(),
            );
        }
        let mut modules = Vec::with_capacity(self.max_degree + 1);
        for k in 0..=self.max_degree {
            let dims: Vec<usize> = (0..n).map(|v| quots[k][v].projection.rows()).collect();
            let steps = (0..n - 1)
                .map(|v| {
                    &(&quots[k][v + 1].projection * self.modules[k].step(v)) * &quots[k][v].section
                })
                .collect();
            modules.push(PersModule::new(self.grid.clone(), dims, steps)?);
        }
        let diffs = (0..self.max_degree)
            .map(|k| {
                (0..n)
                    .map(|v| &(&quots[k + 1][v].projection * &self.diffs[k][v]) * &quots[k][v].section)
                    .collect()
            })
            .collect();
        let q = PersComplex::new(self.grid.clone(), self.max_degree, modules, diffs)?;
        let proj_comps = (0..=self.max_degree)
            .map(|k| (0..n).map(|v| quots[k][v].projection.clone()).collect())
            .collect();
        let proj = PersComplexMap::new(self.clone(), q.clone(), proj_comps)?;
        Ok((q, proj))
    }

    /// Pull the complex back along a grid refinement, extending constantly.
    pub fn refined_to(&self, finer: &EventGrid) -> Result<PersComplex> {
        let embed = self.grid.embed_nodes(finer)?;
        let modules = self
            .modules
            .iter()
            .map(|m| m.refined_to(finer))
            .collect::<Result<Vec<_>>>()?;
        let diffs = (0..self.max_degree)
            .map(|k| {
                embed
                    .iter()
                    .map(|c| match c {
                        Some(v) => self.diffs[k][*v].clone(),
                        None => RatMatrix::zero(0, 0),
                    })
                    .collect()
            })
            .collect();
        PersComplex::new(finer.clone(), self.max_degree, modules, diffs)
    }

    /// The space of maps `D^k_s → self` for `k ≥ 1`, identified with
    /// `X^{k-1}(s)`.
    pub fn hom_from_disk(&self, k: usize, s: &Rat) -> Result<HomFromDisk> {
        if k == 0 {
            return Err(Error::invalid("D^0 is the zero complex"));
        }
        if k > self.max_degree {
            return Err(Error::Truncation(k, self.max_degree));
        }
        let node = self.grid.at_node_of(s)?;
        Ok(HomFromDisk {
            complex: self.clone(),
            degree: k,
            s: s.clone(),
            node,
            dim: self.dim(k - 1, node),
        })
    }

    /// The space of maps `S^k[s,t) → self` for `k ≥ 1`: pairs of a cocycle at
    /// `s` and a bounding element at `t`.
    pub fn hom_from_sphere(&self, k: usize, s: &Rat, t: Option<&Rat>) -> Result<HomFromSphere> {
        if k == 0 {
            return Err(Error::invalid("degree-0 spheres are not supported here"));
        }
        if k > self.max_degree {
            return Err(Error::Truncation(k, self.max_degree));
        }
        let s_node = self.grid.at_node_of(s)?;
        let z_s = self.diff(k as isize, s_node).kernel_basis();
        match t {
            None => {
                // Hom(S^k[s,∞), X) ≅ Z X^k(s)
                let basis = (0..z_s.cols())
                    .map(|j| SphereMapData {
                        cocycle: z_s.col(j),
                        bounding: None,
                    })
                    .collect();
                Ok(HomFromSphere {
                    complex: self.clone(),
                    degree: k,
                    s: s.clone(),
                    t: None,
                    basis,
                })
            }
            Some(t) => {
                if t <= s {
                    return Err(Error::invalid("sphere needs s < t"));
                }
                let t_node = self.grid.at_node_of(t)?;
                let z_t = self.diff(k as isize, t_node).kernel_basis();
                // cocycles at s pushed to t, in Z-coordinates at t
                let pushed = &self.composite_step(k as isize, s_node, t_node)? * &z_s;
                let f = z_t
                    .solve_matrix(&pushed)
                    .expect("shape")
                    .expect("steps preserve cocycles");
                // differential X^{k-1}(t) → Z X^k(t) in Z-coordinates
                let d = self.diff(k as isize - 1, t_node);
                let g = z_t
                    .solve_matrix(&d)
                    .expect("shape")
                    .expect("boundaries are cocycles");
                let (u_part, w_part) = RatMatrix::pullback_basis(&f, &g)?;
                let basis = (0..u_part.cols())
                    .map(|j| SphereMapData {
                        cocycle: z_s.mul_vec(&u_part.col(j)),
                        bounding: Some(w_part.col(j)),
                    })
                    .collect();
                Ok(HomFromSphere {
                    complex: self.clone(),
                    degree: k,
                    s: s.clone(),
                    t: Some(t.clone()),
                    basis,
                })
            }
        }
    }
}

fn half_open_bars(m: &PersModule, k: usize) -> Result<Vec<(Rat, Option<Rat>)>> {
    if !m.is_tame() {
        return Err(Error::hypothesis(format!(
            "graded piece in degree {k} is not tame, so it has no half-open interval decomposition"
        )));
    }
    let dec = barcode(m);
    let mut out = Vec::new();
    for bar in &dec.barcode.bars {
        debug_assert!(bar.interval.is_half_open());
        let s = bar.interval.left.value.clone();
        let t = match &bar.interval.right.value {
            Endpoint::Finite(t) => Some(t.clone()),
            Endpoint::Infinity => None,
        };
        for _ in 0..bar.mult {
            out.push((s.clone(), t.clone()));
        }
    }
    Ok(out)
}

/// Degree-`k` cohomology with enough per-node data to express classes.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub module: PersModule,
    pub decomposition: BarcodeDecomposition,
    nodes: Vec<CohomologyNode>,
}

#[derive(Clone, Debug)]
struct CohomologyNode {
    /// ambient × zdim
    z_basis: RatMatrix,
    /// hdim × zdim
    projection: RatMatrix,
    /// zdim × hdim
    section: RatMatrix,
}

impl Cohomology {
    pub fn dim(&self, v: usize) -> usize {
        self.module.dim(v)
    }

    pub fn barcode(&self) -> &DecoratedBarcode {
        &self.decomposition.barcode
    }

    /// Class of an ambient cocycle; `None` if the vector is not a cocycle.
    pub fn class_of(&self, v: usize, ambient: &[Rat]) -> Option<Vec<Rat>> {
        let node = &self.nodes[v];
        let z = node.z_basis.solve(ambient).ok()??;
        Some(node.projection.mul_vec(&z))
    }

    /// An ambient cocycle representing the given class.
    pub fn representative(&self, v: usize, class: &[Rat]) -> Vec<Rat> {
        let node = &self.nodes[v];
        node.z_basis.mul_vec(&node.section.mul_vec(class))
    }

    /// Matrix of the map induced on cohomology at node `v` by a cochain map
    /// with the given degree-`k` component (target cohomology `other`).
    pub fn induced(&self, other: &Cohomology, comp: &RatMatrix, v: usize) -> RatMatrix {
        let src = &self.nodes[v];
        let tgt = &other.nodes[v];
        let pushed = comp * &src.z_basis;
        let in_z = tgt
            .z_basis
            .solve_matrix(&pushed)
            .expect("shape")
            .expect("cochain maps preserve cocycles");
        &(&tgt.projection * &in_z) * &src.section
    }
}

/// Datum of one basis element of `Hom(S^k[s,t), X)`.
#[derive(Clone, Debug)]
pub struct SphereMapData {
    /// Ambient cocycle in `X^k(s)`.
    pub cocycle: Vec<Rat>,
    /// Element of `X^{k-1}(t)` bounding the pushed cocycle (absent for `t = ∞`).
    pub bounding: Option<Vec<Rat>>,
}

/// `Hom(D^k_s, X)` together with the conversion to explicit cochain maps.
#[derive(Clone, Debug)]
pub struct HomFromDisk {
    complex: PersComplex,
    pub degree: usize,
    pub s: Rat,
    pub node: usize,
    pub dim: usize,
}

impl HomFromDisk {
    /// The map sending the free disk generator to the element of
    /// `X^{k-1}(s)` with the given coordinates.
    pub fn to_map(&self, element: &[Rat]) -> Result<PersComplexMap> {
        if element.len() != self.dim {
            return Err(Error::shape("element has the wrong dimension"));
        }
        let x = &self.complex;
        let disk = PersComplex::disk(x.grid(), self.degree, &self.s, x.max_degree())?;
        let n = x.grid().node_count();
        let k = self.degree;
        let mut comps: Vec<Vec<RatMatrix>> = (0..=x.max_degree())
            .map(|kk| {
                (0..n)
                    .map(|v| RatMatrix::zero(x.dim(kk, v), disk.dim(kk, v)))
                    .collect()
            })
            .collect();
        for v in self.node..n {
            let z_v = x.composite_step(k as isize - 1, self.node, v)?.mul_vec(element);
            comps[k - 1][v] = RatMatrix::from_cols(vec![z_v.clone()]);
            comps[k][v] = RatMatrix::from_cols(vec![x.diff(k as isize - 1, v).mul_vec(&z_v)]);
        }
        PersComplexMap::new(disk, x.clone(), comps)
    }
}

/// `Hom(S^k[s,t), X)` with a basis of (cocycle, bounding element) pairs.
#[derive(Clone, Debug)]
pub struct HomFromSphere {
    complex: PersComplex,
    pub degree: usize,
    pub s: Rat,
    pub t: Option<Rat>,
    pub basis: Vec<SphereMapData>,
}

impl HomFromSphere {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The map corresponding to a coordinate vector in the computed basis.
    pub fn to_map(&self, coords: &[Rat]) -> Result<PersComplexMap> {
        if coords.len() != self.basis.len() {
            return Err(Error::shape("coordinates do not match the basis"));
        }
        let x = &self.complex;
        let k = self.degree;
        let s_node = x.grid().at_node_of(&self.s)?;
        let mut cocycle = vec![Rat::zero(); x.dim(k, s_node)];
        for (c, b) in coords.iter().zip(&self.basis) {
            cocycle = crate::matrix::vec_add(&cocycle, &crate::matrix::vec_scale(&b.cocycle, c));
        }
        let bounding = match &self.t {
            None => None,
            Some(t) => {
                let t_node = x.grid().at_node_of(t)?;
                let mut u = vec![Rat::zero(); x.dim(k - 1, t_node)];
                for (c, b) in coords.iter().zip(&self.basis) {
                    u = crate::matrix::vec_add(
                        &u,
                        &crate::matrix::vec_scale(b.bounding.as_ref().unwrap(), c),
                    );
                }
                Some(u)
            }
        };
        sphere_map(x, k, &self.s, self.t.as_ref(), &cocycle, bounding.as_deref())
    }
}

/// Build the explicit map `S^k[s,t) → X` from a cocycle at `s` and (for
/// finite `t`) a bounding element at `t` with `d u = x_t`.
pub fn sphere_map(
    x: &PersComplex,
    k: usize,
    s: &Rat,
    t: Option<&Rat>,
    cocycle: &[Rat],
    bounding: Option<&[Rat]>,
) -> Result<PersComplexMap> {
    let sphere = PersComplex::sphere(x.grid(), k, s, t, x.max_degree())?;
    let n = x.grid().node_count();
    let s_node = x.grid().at_node_of(s)?;
    let mut comps: Vec<Vec<RatMatrix>> = (0..=x.max_degree())
        .map(|kk| {
            (0..n)
                .map(|v| RatMatrix::zero(x.dim(kk, v), sphere.dim(kk, v)))
                .collect()
        })
        .collect();
    for v in s_node..n {
        let x_v = x.composite_step(k as isize, s_node, v)?.mul_vec(cocycle);
        comps[k][v] = RatMatrix::from_cols(vec![x_v]);
    }
    if let Some(t) = t {
        let t_node = x.grid().at_node_of(t)?;
        let u = bounding.ok_or_else(|| Error::invalid("finite t needs a bounding element"))?;
        for v in t_node..n {
            let u_v = x.composite_step(k as isize - 1, t_node, v)?.mul_vec(u);
            comps[k - 1][v] = RatMatrix::from_cols(vec![u_v]);
        }
    }
    PersComplexMap::new(sphere, x.clone(), comps)
}

/// A map of persistent cochain complexes: a matrix per degree per node,
/// commuting with differentials and steps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PersComplexMap {
    source: PersComplex,
    target: PersComplex,
    /// `components[k][v]`.
    components: Vec<Vec<RatMatrix>>,
}

impl PersComplexMap {
    pub fn new(
        source: PersComplex,
        target: PersComplex,
        components: Vec<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if source.grid() != target.grid() {
            return Err(Error::GridMismatch);
        }
        if source.max_degree() != target.max_degree() {
            return Err(Error::shape("source and target truncation degrees differ"));
        }
        let n = source.grid().node_count();
        if components.len() != source.max_degree() + 1 {
            return Err(Error::shape(format!(
                "expected {} graded components, found {}",
                source.max_degree() + 1,
                components.len()
            )));
        }
        let mut conformed = Vec::with_capacity(components.len());
        for (k, per_node) in components.into_iter().enumerate() {
            if per_node.len() != n {
                return Err(Error::shape(format!(
                    "component in degree {k} needs {n} node matrices"
                )));
            }
            let per_node = per_node
                .into_iter()
                .enumerate()
                .map(|(v, m)| m.conform(target.dim(k, v), source.dim(k, v)))
                .collect::<Result<Vec<_>>>()?;
            conformed.push(per_node);
        }
        let f = PersComplexMap {
            source,
            target,
            components: conformed,
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.grid().node_count();
        for k in 0..=self.source.max_degree() {
            for v in 0..n {
                if k < self.source.max_degree() {
                    let lhs = &self.target.diff(k as isize, v) * &self.components[k][v];
                    let rhs = &self.components[k + 1][v] * &self.source.diff(k as isize, v);
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "map does not commute with d in degree {k} {}",
                            self.source.grid().node_label(v)
                        )));
                    }
                }
                if v + 1 < n {
                    let lhs = &self.target.step(k as isize, v) * &self.components[k][v];
                    let rhs = &self.components[k][v + 1] * &self.source.step(k as isize, v);
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "map does not commute with the step {} -> {} in degree {k}",
                            self.source.grid().node_label(v),
                            self.source.grid().node_label(v + 1)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &PersComplex) -> Self {
        let n = x.grid().node_count();
        let components = (0..=x.max_degree())
            .map(|k| (0..n).map(|v| RatMatrix::identity(x.dim(k, v))).collect())
            .collect();
        PersComplexMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    pub fn zero_map(source: PersComplex, target: PersComplex) -> Result<Self> {
        if source.grid() != target.grid() {
            return Err(Error::GridMismatch);
        }
        if source.max_degree() != target.max_degree() {
            return Err(Error::shape("source and target truncation degrees differ"));
        }
        let n = source.grid().node_count();
        let components = (0..=source.max_degree())
            .map(|k| {
                (0..n)
                    .map(|v| RatMatrix::zero(target.dim(k, v), source.dim(k, v)))
                    .collect()
            })
            .collect();
        Ok(PersComplexMap {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &PersComplex {
        &self.source
    }

    pub fn target(&self) -> &PersComplex {
        &self.target
    }

    pub fn component(&self, k: usize, v: usize) -> &RatMatrix {
        &self.components[k][v]
    }

    /// Component with out-of-range degrees reading as zero-shaped matrices.
    pub fn comp_signed(&self, k: isize, v: usize) -> RatMatrix {
        if k >= 0 && k as usize <= self.source.max_degree() {
            self.components[k as usize][v].clone()
        } else {
            RatMatrix::zero(
                self.target.dim_signed(k, v),
                self.source.dim_signed(k, v),
            )
        }
    }

    pub fn degree_map(&self, k: usize) -> PersModuleMap {
        PersModuleMap::new(
            self.source.module(k).clone(),
            self.target.module(k).clone(),
            self.components[k].clone(),
        )
        .expect("validated componentwise")
    }

    pub fn compose(&self, inner: &PersComplexMap) -> Result<PersComplexMap> {
        if inner.target != self.source {
            return Err(Error::invalid("composition targets do not match"));
        }
        let n = self.source.grid().node_count();
        let components = (0..=self.source.max_degree())
            .map(|k| {
                (0..n)
                    .map(|v| &self.components[k][v] * &inner.components[k][v])
                    .collect()
            })
            .collect();
        Ok(PersComplexMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }

    pub fn is_mono(&self) -> bool {
        self.components
            .iter()
            .all(|per_node| per_node.iter().all(|m| m.kernel_basis().cols() == 0))
    }

    pub fn is_epi(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(k, per_node)| {
                per_node
                    .iter()
                    .enumerate()
                    .all(|(v, m)| m.rank() == self.target.dim(k, v))
            })
    }

    /// Nodewise invertible in every degree.
    pub fn is_iso(&self) -> bool {
        self.components
            .iter()
            .all(|per_node| per_node.iter().all(RatMatrix::is_invertible))
    }

    /// Componentwise inverse (requires [`is_iso`](Self::is_iso)).
    pub fn inverse(&self) -> Result<PersComplexMap> {
        let n = self.source.grid().node_count();
        let mut components = Vec::with_capacity(self.components.len());
        for per_node in &self.components {
            let mut inv_row = Vec::with_capacity(n);
            for m in per_node {
                inv_row.push(m.inverse().ok_or_else(|| {
                    Error::hypothesis("map is not a nodewise isomorphism")
                })?);
            }
            components.push(inv_row);
        }
        PersComplexMap::new(self.target.clone(), self.source.clone(), components)
    }

    /// Pull the map back along a grid refinement.
    pub fn refined_to(&self, finer: &EventGrid) -> Result<PersComplexMap> {
        let embed = self.source.grid().embed_nodes(finer)?;
        let source = self.source.refined_to(finer)?;
        let target = self.target.refined_to(finer)?;
        let components = (0..=self.source.max_degree())
            .map(|k| {
                embed
                    .iter()
                    .map(|c| match c {
                        Some(v) => self.components[k][*v].clone(),
                        None => RatMatrix::zero(0, 0),
                    })
                    .collect()
            })
            .collect();
        PersComplexMap::new(source, target, components)
    }

    /// Direct sum of maps, block by block.
    pub fn direct_sum(maps: &[&PersComplexMap]) -> Result<PersComplexMap> {
        let first = maps.first().ok_or_else(|| Error::invalid("empty sum"))?;
        let grid = first.source.grid().clone();
        let nmax = first.source.max_degree();
        let sources: Vec<&PersComplex> = maps.iter().map(|f| f.source()).collect();
        let targets: Vec<&PersComplex> = maps.iter().map(|f| f.target()).collect();
        let source = PersComplex::direct_sum(&grid, nmax, &sources)?;
        let target = PersComplex::direct_sum(&grid, nmax, &targets)?;
        let n = grid.node_count();
        let components = (0..=nmax)
            .map(|k| {
                (0..n)
                    .map(|v| {
                        let blocks: Vec<&RatMatrix> =
                            maps.iter().map(|f| f.component(k, v)).collect();
                        RatMatrix::block_diag(&blocks)
                    })
                    .collect()
            })
            .collect();
        PersComplexMap::new(source, target, components)
    }
}
