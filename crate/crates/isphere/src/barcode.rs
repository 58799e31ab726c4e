//! Decorated barcode decomposition.
//!
//! Every persistence module on a finite node chain is a representation of an
//! equioriented A-type quiver and therefore splits as a direct sum of
//! interval modules, uniquely up to permutation. The decomposition here is a
//! single left-to-right sweep that keeps, at every node, a basis aligned
//! with the bars alive there:
//!
//! * push the active bar vectors through the step matrix;
//! * reduce the images with priority to older bars — a vector that reduces
//!   to zero closes its bar, and the eliminations are replayed over the
//!   bar's whole history so that each bar's vector line is genuinely
//!   step-invariant (an older bar is alive wherever a younger one is, which
//!   is what makes the replay legal);
//! * complete the surviving images to a basis with unit vectors, each
//!   opening a new bar.
//!
//! The cost is `O(nodes × dim³)` and the output is deterministic. Conjugating
//! the module by the returned per-node bases yields the block interval
//! normal form on the nose, which is what the oracle tests check.

use serde::{Deserialize, Serialize};

use crate::grid::DecoratedInterval;
use crate::matrix::{vec_is_zero, vec_scale, vec_sub, RatMatrix};
use crate::module::PersModule;
use crate::scalar::Rat;

/// One bar with multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Bar {
    #[serde(flatten)]
    pub interval: DecoratedInterval,
    pub mult: usize,
}

/// A multiset of decorated intervals, sorted by node span.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct DecoratedBarcode {
    pub bars: Vec<Bar>,
}

impl DecoratedBarcode {
    pub fn total_multiplicity(&self) -> usize {
        self.bars.iter().map(|b| b.mult).sum()
    }

    /// Multiset union of two barcodes.
    pub fn merge(&self, other: &DecoratedBarcode) -> DecoratedBarcode {
        let mut bars = self.bars.clone();
        for b in &other.bars {
            match bars.iter_mut().find(|x| x.interval == b.interval) {
                Some(x) => x.mult += b.mult,
                None => bars.push(b.clone()),
            }
        }
        bars.sort_by(|a, b| interval_sort_key(&a.interval).cmp(&interval_sort_key(&b.interval)));
        DecoratedBarcode { bars }
    }

    /// True when every bar is `[s, t)` or `[s, ∞)`.
    pub fn is_half_open(&self) -> bool {
        self.bars.iter().all(|b| b.interval.is_half_open())
    }
}

fn interval_sort_key(i: &DecoratedInterval) -> (Rat, LeftKey, RightKey) {
    (
        i.left.value.clone(),
        match i.left.dec {
            crate::grid::LeftDec::ClosedAt => LeftKey(0),
            crate::grid::LeftDec::OpenAfter => LeftKey(1),
        },
        match (&i.right.value, i.right.dec) {
            (crate::grid::Endpoint::Finite(v), crate::grid::RightDec::OpenBefore) => {
                RightKey(0, Some(v.clone()), 0)
            }
            (crate::grid::Endpoint::Finite(v), crate::grid::RightDec::ClosedThrough) => {
                RightKey(0, Some(v.clone()), 1)
            }
            (crate::grid::Endpoint::Infinity, _) => RightKey(1, None, 0),
        },
    )
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct LeftKey(u8);
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RightKey(u8, Option<Rat>, u8);

/// A barcode together with the per-node change of basis realizing it.
#[derive(Clone, Debug)]
pub struct BarcodeDecomposition {
    pub barcode: DecoratedBarcode,
    /// Individual bars (multiplicity 1 each) as node spans, in the order used
    /// for the normal form layout.
    pub spans: Vec<(usize, usize)>,
    /// Per node: an invertible matrix whose columns are the vectors of the
    /// bars alive there, in `spans` order. Mapping normal-form coordinates to
    /// module coordinates.
    pub basis: Vec<RatMatrix>,
}

impl BarcodeDecomposition {
    /// The direct sum of the listed intervals, laid out in `spans` order.
    pub fn normal_form(&self, m: &PersModule) -> PersModule {
        let grid = m.grid();
        let n = grid.node_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| self.spans.iter().filter(|s| s.0 <= v && v <= s.1).count())
            .collect();
        let steps = (0..n - 1)
            .map(|v| {
                let alive_now: Vec<usize> = (0..self.spans.len())
                    .filter(|&b| self.spans[b].0 <= v && v <= self.spans[b].1)
                    .collect();
                let alive_next: Vec<usize> = (0..self.spans.len())
                    .filter(|&b| self.spans[b].0 <= v + 1 && v + 1 <= self.spans[b].1)
                    .collect();
                let mut s = RatMatrix::zero(alive_next.len(), alive_now.len());
                for (col, b) in alive_now.iter().enumerate() {
                    if let Some(row) = alive_next.iter().position(|x| x == b) {
                        s.set(row, col, Rat::one());
                    }
                }
                s
            })
            .collect();
        PersModule::new(grid.clone(), dims, steps).expect("normal form is well formed")
    }

    /// Conjugated step `basis(v+1)^{-1} · step(v) · basis(v)`; equal to the
    /// normal-form step when the decomposition is correct.
    pub fn conjugated_step(&self, m: &PersModule, v: usize) -> RatMatrix {
        let inv = self.basis[v + 1]
            .inverse()
            .expect("barcode basis is invertible");
        &(&inv * m.step(v)) * &self.basis[v]
    }
}

struct ActiveBar {
    birth: usize,
    /// Vector at each node from `birth` to the current sweep position.
    history: Vec<Vec<Rat>>,
}

/// Decompose a persistence module into decorated interval summands.
pub fn barcode(m: &PersModule) -> BarcodeDecomposition {
    let n = m.node_count();
    let mut active: Vec<ActiveBar> = Vec::new();
    let mut finished: Vec<(usize, usize, Vec<Vec<Rat>>)> = Vec::new();

    // node 0: every coordinate opens a bar
    for i in 0..m.dim(0) {
        let mut e = vec![Rat::zero(); m.dim(0)];
        e[i] = Rat::one();
        active.push(ActiveBar {
            birth: 0,
            history: vec![e],
        });
    }

    for v in 0..n.saturating_sub(1) {
        let step = m.step(v);
        let mut images: Vec<Vec<Rat>> = active
            .iter()
            .map(|b| step.mul_vec(b.history.last().unwrap()))
            .collect();

        // active bars are kept oldest-first, so reducing in index order gives
        // older bars priority
        let mut accepted: Vec<(usize, usize)> = Vec::new(); // (pivot row, bar index)
        let mut dying: Vec<usize> = Vec::new();
        for i in 0..active.len() {
            let mut w = images[i].clone();
            let mut eliminations: Vec<(usize, Rat)> = Vec::new();
            for &(p, j) in &accepted {
                if !w[p].is_zero() {
                    let factor = &w[p] / &images[j][p];
                    w = vec_sub(&w, &vec_scale(&images[j], &factor));
                    eliminations.push((j, factor));
                }
            }
            // replay the eliminations over the bar's history so that the
            // retained vector line is consistent with every earlier step
            for (j, factor) in eliminations {
                let offset = active[i].birth - active[j].birth;
                for u in 0..active[i].history.len() {
                    let scaled = vec_scale(&active[j].history[offset + u], &factor);
                    active[i].history[u] = vec_sub(&active[i].history[u], &scaled);
                }
            }
            if vec_is_zero(&w) {
                dying.push(i);
            } else {
                let pivot = w.iter().position(|x| !x.is_zero()).unwrap();
                accepted.push((pivot, i));
                images[i] = w;
            }
        }

        // retire dying bars (descending index so removal is stable)
        for &i in dying.iter().rev() {
            let bar = active.remove(i);
            finished.push((bar.birth, v, bar.history));
        }
        // the accepted indices shifted; recompute survivor images in order
        for bar in &mut active {
            let w = step.mul_vec(bar.history.last().unwrap());
            bar.history.push(w);
        }

        // complete to a basis of the next node with unit vectors
        let dim_next = m.dim(v + 1);
        let mut echelon: Vec<Vec<Rat>> = active
            .iter()
            .map(|b| b.history.last().unwrap().clone())
            .collect();
        reduce_echelon(&mut echelon);
        for c in 0..dim_next {
            let mut e = vec![Rat::zero(); dim_next];
            e[c] = Rat::one();
            let mut probe = e.clone();
            for row in &echelon {
                if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                    if !probe[p].is_zero() {
                        let factor = &probe[p] / &row[p];
                        probe = vec_sub(&probe, &vec_scale(row, &factor));
                    }
                }
            }
            if !vec_is_zero(&probe) {
                echelon.push(probe);
                reduce_echelon(&mut echelon);
                active.push(ActiveBar {
                    birth: v + 1,
                    history: vec![e],
                });
            }
        }
        debug_assert_eq!(active.len(), dim_next, "alive bars must span the node");
    }

    for bar in active {
        finished.push((bar.birth, n - 1, bar.history));
    }

    // deterministic layout: sort by node span
    finished.sort_by_key(|&(b, d, _)| (b, d));
    let spans: Vec<(usize, usize)> = finished.iter().map(|&(b, d, _)| (b, d)).collect();

    let mut basis = Vec::with_capacity(n);
    for v in 0..n {
        let cols: Vec<Vec<Rat>> = finished
            .iter()
            .filter(|&&(b, d, _)| b <= v && v <= d)
            .map(|(b, _, hist)| hist[v - b].clone())
            .collect();
        let mat = if cols.is_empty() {
            RatMatrix::zero(m.dim(v), 0)
        } else {
            RatMatrix::from_cols(cols)
        };
        basis.push(mat);
    }

    let mut bars: Vec<Bar> = Vec::new();
    for &(b, d) in &spans {
        let interval = DecoratedInterval::from_node_span(m.grid(), b, d);
        match bars.last_mut() {
            Some(last) if last.interval == interval => last.mult += 1,
            _ => bars.push(Bar { interval, mult: 1 }),
        }
    }

    BarcodeDecomposition {
        barcode: DecoratedBarcode { bars },
        spans,
        basis,
    }
}

/// Number of individual bars whose span contains both `p` and `q`.
pub fn bars_covering(dec: &BarcodeDecomposition, p: usize, q: usize) -> usize {
    dec.spans.iter().filter(|s| s.0 <= p && q <= s.1).count()
}

fn reduce_echelon(rows: &mut Vec<Vec<Rat>>) {
    // partial forward elimination, enough for membership probes
    let mut cleaned: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
    for row in rows.drain(..) {
        let mut w = row;
        for prev in &cleaned {
            if let Some(p) = prev.iter().position(|x| !x.is_zero()) {
                if !w[p].is_zero() {
                    let factor = &w[p] / &prev[p];
                    w = vec_sub(&w, &vec_scale(prev, &factor));
                }
            }
        }
        if !vec_is_zero(&w) {
            cleaned.push(w);
        }
    }
    *rows = cleaned;
}
