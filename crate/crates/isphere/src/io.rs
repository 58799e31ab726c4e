//! JSON file schemas.
//!
//! All files are UTF-8 JSON with rationals as `"p/q"` / `"n"` strings.
//! Modules are `{"grid": [...], "dims": [...], "steps": [...]}` with one
//! dimension per node (two nodes per grid value, `At` then `Germ`) and one
//! step matrix per consecutive node pair. Complexes hoist the grid and list
//! the graded modules and differentials; maps embed their endpoints.

use serde::{Deserialize, Serialize};

use crate::complex::{PersComplex, PersComplexMap};
use crate::error::Result;
use crate::grid::EventGrid;
use crate::matrix::RatMatrix;
use crate::module::PersModule;
use crate::scalar::Rat;

/// On-disk form of a persistence module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub grid: Vec<Rat>,
    pub dims: Vec<usize>,
    pub steps: Vec<RatMatrix>,
}

impl ModuleFile {
    pub fn from_module(m: &PersModule) -> Self {
        ModuleFile {
            grid: m.grid().values().to_vec(),
            dims: m.dims().to_vec(),
            steps: (0..m.node_count() - 1).map(|v| m.step(v).clone()).collect(),
        }
    }

    pub fn to_module(&self) -> Result<PersModule> {
        let grid = EventGrid::new(self.grid.clone())?;
        PersModule::new(grid, self.dims.clone(), self.steps.clone())
    }
}

/// On-disk form of a persistent cochain complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub grid: Vec<Rat>,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    /// One graded module per degree `0..=maxDegree` (grid hoisted).
    pub modules: Vec<GradedModuleFile>,
    /// `differentials[k][v]` maps degree `k` to `k+1` at node `v`.
    pub differentials: Vec<Vec<RatMatrix>>,
}

/// A module inside a complex file: the grid lives on the complex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedModuleFile {
    pub dims: Vec<usize>,
    pub steps: Vec<RatMatrix>,
}

impl ComplexFile {
    pub fn from_complex(x: &PersComplex) -> Self {
        let n = x.grid().node_count();
        ComplexFile {
            grid: x.grid().values().to_vec(),
            max_degree: x.max_degree(),
            modules: x
                .modules()
                .iter()
                .map(|m| GradedModuleFile {
                    dims: m.dims().to_vec(),
                    steps: (0..n - 1).map(|v| m.step(v).clone()).collect(),
                })
                .collect(),
            differentials: (0..x.max_degree())
                .map(|k| (0..n).map(|v| x.diff(k as isize, v)).collect())
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<PersComplex> {
        let grid = EventGrid::new(self.grid.clone())?;
        let modules = self
            .modules
            .iter()
            .map(|m| PersModule::new(grid.clone(), m.dims.clone(), m.steps.clone()))
            .collect::<Result<Vec<_>>>()?;
        PersComplex::new(grid, self.max_degree, modules, self.differentials.clone())
    }
}

/// On-disk form of a map of persistent cochain complexes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: ComplexFile,
    pub target: ComplexFile,
    /// `components[k][v]`.
    pub components: Vec<Vec<RatMatrix>>,
}

impl MapFile {
    pub fn from_map(f: &PersComplexMap) -> Self {
        let n = f.source().grid().node_count();
        MapFile {
            source: ComplexFile::from_complex(f.source()),
            target: ComplexFile::from_complex(f.target()),
            components: (0..=f.source().max_degree())
                .map(|k| (0..n).map(|v| f.component(k, v).clone()).collect())
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<PersComplexMap> {
        PersComplexMap::new(
            self.source.to_complex()?,
            self.target.to_complex()?,
            self.components.clone(),
        )
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::DecoratedInterval;
    use crate::scalar::rat;

    #[test]
    fn module_file_round_trip() {
        let g = EventGrid::from_ints(&[0, 1]);
        let m = PersModule::interval(&g, &DecoratedInterval::half_open(rat(0), rat(1))).unwrap();
        let file = ModuleFile::from_module(&m);
        let json = serde_json::to_string(&file).unwrap();
        let back: ModuleFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_module().unwrap(), m);
    }

    #[test]
    fn complex_and_map_round_trip() {
        let g = EventGrid::from_ints(&[0, 1]);
        let x = PersComplex::sphere(&g, 2, &rat(0), Some(&rat(1)), 2).unwrap();
        let file = ComplexFile::from_complex(&x);
        let json = serde_json::to_string(&file).unwrap();
        let back: ComplexFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_complex().unwrap(), x);

        let id = PersComplexMap::identity(&x);
        let mf = MapFile::from_map(&id);
        let json = serde_json::to_string(&mf).unwrap();
        let back: MapFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_map().unwrap(), id);
    }

    #[test]
    fn malformed_module_is_rejected() {
        let json = r#"{"grid": ["0","1"], "dims": [1,1,0,0], "steps": [[["1"]],[["1"]],[]]}"#;
        let file: ModuleFile = serde_json::from_str(json).unwrap();
        // step matrices do not match the dims: Germ(0) -> At(1) must be 0x1
        assert!(file.to_module().is_err());
    }
}

/// On-disk form of a persistent CDGA, either presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CdgaFile {
    Free(FreeCdgaFile),
    Nodewise(NodewiseCdgaFile),
}

/// Free presentation: generators with supports, differential and exit
/// polynomials in the listed generator names.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeCdgaFile {
    pub grid: Vec<Rat>,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    pub generators: Vec<FreeGenFile>,
    /// Differentials keyed by generator name; missing entries are zero.
    #[serde(default)]
    pub d: std::collections::BTreeMap<String, String>,
    /// Exit polynomials keyed by generator name; missing entries are zero.
    #[serde(default)]
    pub exit: std::collections::BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FreeGenFile {
    pub name: String,
    pub degree: usize,
    pub support: crate::cells::HalfOpenSupport,
}

/// Nodewise presentation with explicit tables. Multiplication tables that
/// are zero may be omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodewiseCdgaFile {
    pub grid: Vec<Rat>,
    #[serde(rename = "maxDegree")]
    pub max_degree: usize,
    pub nodes: Vec<NodeAlgebraFile>,
    /// `steps[v][k]`.
    pub steps: Vec<Vec<RatMatrix>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeAlgebraFile {
    pub dims: Vec<usize>,
    pub unit: Vec<Rat>,
    /// One matrix per degree `k < maxDegree`.
    pub d: Vec<RatMatrix>,
    #[serde(default)]
    pub mult: Vec<MultTableFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultTableFile {
    pub p: usize,
    pub q: usize,
    pub table: RatMatrix,
}

impl CdgaFile {
    pub fn from_free(f: &crate::cdga::FreePcdga) -> Self {
        let names = f.gen_names();
        CdgaFile::Free(FreeCdgaFile {
            grid: f.grid.values().to_vec(),
            max_degree: f.max_degree,
            generators: f
                .gens
                .iter()
                .map(|g| FreeGenFile {
                    name: g.name.clone(),
                    degree: g.degree,
                    support: g.support.clone(),
                })
                .collect(),
            d: f.gens
                .iter()
                .filter(|g| !g.d.is_zero())
                .map(|g| (g.name.clone(), g.d.render(&names)))
                .collect(),
            exit: f
                .gens
                .iter()
                .filter(|g| !g.exit.is_zero())
                .map(|g| (g.name.clone(), g.exit.render(&names)))
                .collect(),
        })
    }

    pub fn from_nodewise(a: &crate::cdga::NodewiseAlgebra) -> Self {
        let n = a.grid().node_count();
        let nmax = a.max_degree();
        CdgaFile::Nodewise(NodewiseCdgaFile {
            grid: a.grid().values().to_vec(),
            max_degree: nmax,
            nodes: (0..n)
                .map(|v| {
                    let node = a.node(v);
                    NodeAlgebraFile {
                        dims: node.dims.clone(),
                        unit: node.unit.clone(),
                        d: node.diff.clone(),
                        mult: (0..=nmax)
                            .flat_map(|p| (0..=nmax - p).map(move |q| (p, q)))
                            .filter(|&(p, q)| !node.mult[p][q].is_zero())
                            .map(|(p, q)| MultTableFile {
                                p,
                                q,
                                table: node.mult[p][q].clone(),
                            })
                            .collect(),
                    }
                })
                .collect(),
            steps: (0..n - 1)
                .map(|v| (0..=nmax).map(|k| a.step(k, v).clone()).collect())
                .collect(),
        })
    }

    /// Evaluate to the nodewise presentation (free files are evaluated).
    pub fn to_nodewise(&self) -> Result<crate::cdga::NodewiseAlgebra> {
        match self {
            CdgaFile::Free(f) => Ok(f.to_free()?.evaluate()?.algebra),
            CdgaFile::Nodewise(n) => n.to_nodewise(),
        }
    }
}

impl FreeCdgaFile {
    pub fn to_free(&self) -> Result<crate::cdga::FreePcdga> {
        let grid = EventGrid::new(self.grid.clone())?;
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let d = match self.d.get(&g.name) {
                    Some(text) => crate::cdga::Poly::parse(text, &names)?,
                    None => crate::cdga::Poly::zero(),
                };
                let exit = match self.exit.get(&g.name) {
                    Some(text) => crate::cdga::Poly::parse(text, &names)?,
                    None => crate::cdga::Poly::zero(),
                };
                Ok(crate::cdga::FreeGen {
                    name: g.name.clone(),
                    degree: g.degree,
                    support: g.support.clone(),
                    d,
                    exit,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(crate::cdga::FreePcdga {
            grid,
            max_degree: self.max_degree,
            gens,
        })
    }
}

impl NodewiseCdgaFile {
    pub fn to_nodewise(&self) -> Result<crate::cdga::NodewiseAlgebra> {
        let grid = EventGrid::new(self.grid.clone())?;
        let nmax = self.max_degree;
        let nodes = self
            .nodes
            .iter()
            .map(|nf| {
                let dims = nf.dims.clone();
                let mut mult: Vec<Vec<RatMatrix>> = (0..=nmax)
                    .map(|p| {
                        (0..=nmax - p)
                            .map(|q| RatMatrix::zero(dims[p + q], dims[p] * dims[q]))
                            .collect()
                    })
                    .collect();
                for t in &nf.mult {
                    if t.p + t.q > nmax {
                        return Err(crate::error::Error::shape(
                            "multiplication table beyond the truncation",
                        ));
                    }
                    mult[t.p][t.q] = t
                        .table
                        .clone()
                        .conform(dims[t.p + t.q], dims[t.p] * dims[t.q])?;
                }
                let d = nf
                    .d
                    .iter()
                    .enumerate()
                    .map(|(k, m)| m.clone().conform(dims[k + 1], dims[k]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(crate::cdga::NodeAlgebra {
                    dims,
                    unit: nf.unit.clone(),
                    mult,
                    diff: d,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // conform step shapes against the node dims
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(v, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, m)| {
                        m.clone()
                            .conform(self.nodes[v + 1].dims[k], self.nodes[v].dims[k])
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        crate::cdga::NodewiseAlgebra::new(grid, nmax, nodes, steps)
    }
}
