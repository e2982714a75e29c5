//! Layer scheduling and circuit metrics.
//!
//! Gates are grouped into T-stages: a T/T† gate sits one stage above the
//! latest stage among its operands, every other gate sits at that latest
//! stage. The layers are then
//!
//! ```text
//! B₀, L₁, B₁, L₂, B₂, …
//! ```
//!
//! where `Lₛ` is a single layer holding every T/T† of stage `s` and `Bₛ` is
//! the as-soon-as-possible packing of the non-T gates of stage `s`. Per-qubit
//! gate order is preserved, so the flattened layers implement the input
//! sequence. The number of T-layers equals the largest number of T gates on
//! any dependency path, which is the least any schedule can achieve.

use serde::{Deserialize, Serialize};

use crate::circuit::Gate;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayeredCircuit {
    pub qubit_count: usize,
    /// Each layer's gates act on pairwise disjoint qubits.
    pub layers: Vec<Vec<Gate>>,
}

impl LayeredCircuit {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn flatten(&self) -> Vec<Gate> {
        self.layers.iter().flatten().cloned().collect()
    }

    pub fn metrics(&self) -> Metrics {
        metrics(self)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub t_depth: usize,
    pub t_count: usize,
    pub depth: usize,
    pub size: usize,
}

/// Packs `gates` into layers of disjoint gates.
pub fn schedule_layers(gates: &[Gate]) -> LayeredCircuit {
    let qubit_count = gates
        .iter()
        .flat_map(|g| g.operands())
        .map(|q| q.0 + 1)
        .max()
        .unwrap_or(0);

    // Stage assignment.
    let mut qubit_stage = vec![0usize; qubit_count];
    let mut stages = Vec::with_capacity(gates.len());
    let mut max_stage = 0;
    for g in gates {
        let ops = g.operands();
        let mut s = ops.iter().map(|q| qubit_stage[q.0]).max().unwrap_or(0);
        if g.is_t_like() {
            s += 1;
        }
        for q in &ops {
            qubit_stage[q.0] = s;
        }
        max_stage = max_stage.max(s);
        stages.push(s);
    }

    let mut blocks: Vec<Vec<Vec<Gate>>> = vec![Vec::new(); max_stage + 1];
    let mut t_layers: Vec<Vec<Gate>> = vec![Vec::new(); max_stage + 1];
    // Next free layer index per qubit within the block of the qubit's
    // current stage.
    let mut free = vec![(0usize, 0usize); qubit_count];
    for (g, &s) in gates.iter().zip(&stages) {
        if g.is_t_like() {
            t_layers[s].push(g.clone());
            continue;
        }
        let ops = g.operands();
        let layer = ops
            .iter()
            .map(|q| match free[q.0] {
                (stage, next) if stage == s => next,
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        let block = &mut blocks[s];
        if block.len() <= layer {
            block.resize_with(layer + 1, Vec::new);
        }
        block[layer].push(g.clone());
        for q in &ops {
            free[q.0] = (s, layer + 1);
        }
    }

    let mut layers = Vec::new();
    for (s, block) in blocks.into_iter().enumerate() {
        if s > 0 {
            layers.push(std::mem::take(&mut t_layers[s]));
        }
        layers.extend(block);
    }
    LayeredCircuit {
        qubit_count,
        layers,
    }
}

pub fn metrics(layered: &LayeredCircuit) -> Metrics {
    let t_count = layered
        .layers
        .iter()
        .flatten()
        .filter(|g| g.is_t_like())
        .count();
    Metrics {
        t_depth: layered
            .layers
            .iter()
            .filter(|layer| layer.iter().any(Gate::is_t_like))
            .count(),
        t_count,
        depth: layered.depth(),
        size: layered.layers.iter().map(Vec::len).sum(),
    }
}
