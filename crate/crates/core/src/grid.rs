//! ReLU on a 2D nearest-neighbour grid.
//!
//! Inputs sit on even (0-based) columns, filled column by column, and output
//! `aᵢ` sits immediately right of `xᵢ₊₁`, so every CNOT of the ReLU network
//! is local except the four fan-outs from x₁. Those are rebuilt as
//! quadrant-recursive copy trees whose long-range CNOTs are routed through
//! SWAP chains. Every grid cell holds a qubit; cells not used by the ReLU
//! hold `Unused` qubits that routing may pass through.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::circuit::{Circuit, Gate, QubitId, Role};
use crate::error::{Error, Result};
use crate::synth::shared_control_batch_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridCoord {
    pub row: usize,
    pub col: usize,
}

impl GridCoord {
    pub fn new(row: usize, col: usize) -> Self {
        GridCoord { row, col }
    }

    pub fn distance(self, other: GridCoord) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridLayout {
    rows: usize,
    cols: usize,
    coords: Vec<Option<GridCoord>>,
    cells: Vec<Option<QubitId>>,
}

/// JSON form of a layout: qubit index → `[row, col]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayoutDump {
    pub rows: usize,
    pub cols: usize,
    pub placement: BTreeMap<usize, [usize; 2]>,
}

impl GridLayout {
    pub fn new(rows: usize, cols: usize) -> Self {
        GridLayout {
            rows,
            cols,
            coords: Vec::new(),
            cells: vec![None; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// One past the highest placed qubit index.
    pub fn qubit_count(&self) -> usize {
        self.coords.len()
    }

    pub fn place(&mut self, q: QubitId, at: GridCoord) -> Result<()> {
        if at.row >= self.rows || at.col >= self.cols {
            return Err(Error::OffGrid {
                row: at.row,
                col: at.col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let cell = at.row * self.cols + at.col;
        if self.cells[cell].is_some() || self.coords.get(q.0).is_some_and(Option::is_some) {
            return Err(Error::CellTaken {
                row: at.row,
                col: at.col,
            });
        }
        if self.coords.len() <= q.0 {
            self.coords.resize(q.0 + 1, None);
        }
        self.coords[q.0] = Some(at);
        self.cells[cell] = Some(q);
        Ok(())
    }

    pub fn coord(&self, q: QubitId) -> Result<GridCoord> {
        self.coords
            .get(q.0)
            .copied()
            .flatten()
            .ok_or(Error::UnplacedQubit(q))
    }

    pub fn qubit_at(&self, at: GridCoord) -> Option<QubitId> {
        if at.row < self.rows && at.col < self.cols {
            self.cells[at.row * self.cols + at.col]
        } else {
            None
        }
    }

    pub fn adjacent(&self, a: QubitId, b: QubitId) -> bool {
        match (self.coord(a), self.coord(b)) {
            (Ok(x), Ok(y)) => x.distance(y) == 1,
            _ => false,
        }
    }

    pub fn dump(&self) -> LayoutDump {
        LayoutDump {
            rows: self.rows,
            cols: self.cols,
            placement: self
                .coords
                .iter()
                .enumerate()
                .filter_map(|(q, c)| c.map(|c| (q, [c.row, c.col])))
                .collect(),
        }
    }
}

/// Smallest even `k ≥ 2` with `k²/2 ≥ n`.
pub fn grid_side(n: usize) -> usize {
    let mut k = 2;
    while k * k / 2 < n {
        k += 2;
    }
    k
}

/// `k × k` layout for an `n`-bit ReLU. Qubits `0..n` are inputs, `n..2n−1`
/// outputs `a₁…aₙ₋₁`, and `2n−1..k²` fill the remaining cells in row-major
/// order.
pub fn layout_relu_grid(n: usize) -> Result<GridLayout> {
    if n < 2 {
        return Err(Error::WidthTooSmall(n));
    }
    let k = grid_side(n);
    let mut layout = GridLayout::new(k, k);
    for i in 0..n {
        layout.place(QubitId(i), GridCoord::new(i % k, 2 * (i / k)))?;
    }
    for j in 1..n {
        layout.place(QubitId(n + j - 1), GridCoord::new(j % k, 2 * (j / k) + 1))?;
    }
    let mut next = 2 * n - 1;
    for row in 0..k {
        for col in 0..k {
            let at = GridCoord::new(row, col);
            if layout.qubit_at(at).is_none() {
                layout.place(QubitId(next), at)?;
                next += 1;
            }
        }
    }
    Ok(layout)
}

/// Cells from `from` to `to`: along `from`'s row first, then along `to`'s
/// column. Both ends included.
fn l_path(from: GridCoord, to: GridCoord) -> Vec<GridCoord> {
    let mut path = vec![from];
    let mut at = from;
    while at.col != to.col {
        at.col = if to.col > at.col { at.col + 1 } else { at.col - 1 };
        path.push(at);
    }
    while at.row != to.row {
        at.row = if to.row > at.row { at.row + 1 } else { at.row - 1 };
        path.push(at);
    }
    path
}

fn routed_cnot_gates(layout: &GridLayout, src: QubitId, dst: QubitId) -> Result<Vec<Gate>> {
    let path = l_path(layout.coord(src)?, layout.coord(dst)?);
    let qubits = path
        .iter()
        .map(|&c| {
            layout
                .qubit_at(c)
                .ok_or(Error::VacantCell { row: c.row, col: c.col })
        })
        .collect::<Result<Vec<_>>>()?;
    // Both ends walk toward the middle of the path so the two SWAP chains
    // run concurrently.
    let d = qubits.len() - 1;
    let m = (d - 1) / 2;
    let mut swaps: Vec<Gate> = (0..m).map(|i| Gate::swap(qubits[i], qubits[i + 1])).collect();
    swaps.extend((m + 1..d).rev().map(|i| Gate::swap(qubits[i], qubits[i + 1])));
    let mut gates = swaps.clone();
    gates.push(Gate::cx(qubits[m], qubits[m + 1]));
    gates.extend(swaps.into_iter().rev());
    Ok(gates)
}

/// CNOT `src → dst` between arbitrary placed qubits using only adjacent
/// gates: SWAP chains bring the two values next to each other along an
/// L-shaped path and are undone afterwards.
pub fn route_long_cnot(layout: &GridLayout, src: QubitId, dst: QubitId) -> Result<Circuit> {
    if src == dst {
        return Err(Error::OverlappingPairs(src));
    }
    let gates = routed_cnot_gates(layout, src, dst)?;
    Ok(Circuit::with_gates(layout.qubit_count(), gates))
}

/// Copy forest used by a grid fan-out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoutPlan {
    pub source: QubitId,
    /// `(holder, receiver)` edges in top-down order. Edges held by the source
    /// start a tree; every other holder is an earlier receiver.
    pub edges: Vec<(QubitId, QubitId)>,
}

fn top_left(layout: &GridLayout, qs: &[QubitId]) -> Result<QubitId> {
    let mut best = None;
    for &q in qs {
        let c = layout.coord(q)?;
        if best.is_none_or(|(bc, _)| (c.row, c.col) < bc) {
            best = Some(((c.row, c.col), q));
        }
    }
    Ok(best.expect("non-empty").1)
}

/// Splits `holder ∪ targets` along one axis at half the bounding extent.
/// Returns `(holder side targets, other side (rep, targets))`.
fn split(
    layout: &GridLayout,
    holder: QubitId,
    targets: Vec<QubitId>,
    by_col: bool,
    edges: &mut Vec<(QubitId, QubitId)>,
) -> Result<Vec<(QubitId, Vec<QubitId>)>> {
    let key = |q: QubitId| -> Result<usize> {
        let c = layout.coord(q)?;
        Ok(if by_col { c.col } else { c.row })
    };
    let mut lo = key(holder)?;
    let mut hi = lo;
    for &t in &targets {
        let v = key(t)?;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let width = hi - lo + 1;
    if width < 2 {
        return Ok(vec![(holder, targets)]);
    }
    let mid = lo + width / 2;
    let holder_low = key(holder)? < mid;
    let (mut mine, mut other) = (Vec::new(), Vec::new());
    for t in targets {
        if (key(t)? < mid) == holder_low {
            mine.push(t);
        } else {
            other.push(t);
        }
    }
    let mut parts = vec![(holder, mine)];
    if !other.is_empty() {
        let rep = top_left(layout, &other)?;
        edges.push((holder, rep));
        other.retain(|&q| q != rep);
        parts.push((rep, other));
    }
    Ok(parts)
}

fn plan_region(
    layout: &GridLayout,
    holder: QubitId,
    targets: Vec<QubitId>,
    edges: &mut Vec<(QubitId, QubitId)>,
) -> Result<()> {
    if targets.is_empty() {
        return Ok(());
    }
    let mut quadrants = Vec::new();
    for (h, ts) in split(layout, holder, targets.clone(), true, edges)? {
        quadrants.extend(split(layout, h, ts, false, edges)?);
    }
    debug_assert!(quadrants.len() > 1 || quadrants[0].1.len() < targets.len());
    for (h, ts) in quadrants {
        plan_region(layout, h, ts, edges)?;
    }
    Ok(())
}

fn check_fanout(layout: &GridLayout, source: QubitId, targets: &[QubitId]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::EmptyTargets);
    }
    let mut seen = HashSet::from([source]);
    for &t in targets {
        if !seen.insert(t) {
            return Err(Error::OverlappingPairs(t));
        }
    }
    for &q in std::iter::once(&source).chain(targets) {
        layout.coord(q)?;
    }
    Ok(())
}

/// Quadrant-recursive copy forest. The source holds the whole region; each
/// region is split at half its column extent, then half its row extent, and
/// the holder sends the value to the top-left target of every other part.
pub fn plan_grid_fanout(layout: &GridLayout, source: QubitId, targets: &[QubitId]) -> Result<FanoutPlan> {
    check_fanout(layout, source, targets)?;
    let mut edges = Vec::new();
    plan_region(layout, source, targets.to_vec(), &mut edges)?;
    Ok(FanoutPlan { source, edges })
}

/// `T⁻¹ · R · T`, where `R` is the source edges and `T` the rest of the
/// forest: every tree root gains the source, and `T` spreads that change
/// down each tree.
pub(crate) fn grid_fanout_gates(layout: &GridLayout, source: QubitId, targets: &[QubitId]) -> Result<Vec<Gate>> {
    let plan = plan_grid_fanout(layout, source, targets)?;
    let (mut roots, mut tree) = (Vec::new(), Vec::new());
    for &(a, b) in &plan.edges {
        let routed = routed_cnot_gates(layout, a, b)?;
        if a == source {
            roots.extend(routed);
        } else {
            tree.extend(routed);
        }
    }
    let mut gates: Vec<Gate> = tree.iter().rev().cloned().collect();
    gates.extend(roots);
    gates.extend(tree);
    Ok(gates)
}

/// Fan-out `source → targets` using only grid-adjacent CNOTs and SWAPs.
pub fn build_grid_fanout(layout: &GridLayout, source: QubitId, targets: &[QubitId]) -> Result<Circuit> {
    let gates = grid_fanout_gates(layout, source, targets)?;
    Ok(Circuit::with_gates(layout.qubit_count(), gates))
}

/// Grid-constrained ReLU at T-depth 4. Returns the circuit and its layout.
pub fn build_relu_grid(n: usize) -> Result<(Circuit, GridLayout)> {
    let layout = layout_relu_grid(n)?;
    let x1 = QubitId(0);
    let inputs: Vec<QubitId> = (0..n).map(QubitId).collect();
    let outputs: Vec<QubitId> = (n..2 * n - 1).map(QubitId).collect();
    let pairs: Vec<(QubitId, QubitId)> = inputs[1..].iter().copied().zip(outputs.iter().copied()).collect();

    let to_outputs = grid_fanout_gates(&layout, x1, &outputs)?;
    let to_inputs = grid_fanout_gates(&layout, x1, &inputs[1..])?;
    let batch = shared_control_batch_with(x1, &pairs, |_, targets| {
        if targets[0] == outputs[0] {
            to_outputs.clone()
        } else {
            to_inputs.clone()
        }
    });

    let mut c = Circuit::new(layout.qubit_count());
    c.set_roles(inputs, Role::Input);
    c.set_roles(outputs, Role::Output);
    c.push(Gate::X(x1));
    c.extend(batch);
    c.push(Gate::X(x1));
    c.origin = Some(json!({ "kind": "relu", "bits": n, "layout": "grid" }));
    Ok((c, layout))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub gate_index: usize,
    pub gate: String,
    pub reason: String,
}

/// Lists every gate that is not executable under grid connectivity: two-qubit
/// gates on non-adjacent cells, gates on three or more qubits, and gates
/// touching unplaced qubits.
pub fn validate_connectivity(circuit: &Circuit, layout: &GridLayout) -> Vec<Violation> {
    circuit
        .gates
        .iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let ops = g.operands();
            let reason = if let Some(q) = ops.iter().find(|&&q| layout.coord(q).is_err()) {
                format!("qubit {q} is not placed")
            } else if ops.len() > 2 {
                format!("{}-qubit gate", ops.len())
            } else if ops.len() == 2 && !layout.adjacent(ops[0], ops[1]) {
                let (a, b) = (layout.coord(ops[0]).ok()?, layout.coord(ops[1]).ok()?);
                format!(
                    "({},{}) and ({},{}) are not adjacent",
                    a.row, a.col, b.row, b.col
                )
            } else {
                return None;
            };
            Some(Violation {
                gate_index: i,
                gate: g.to_string(),
                reason,
            })
        })
        .collect()
}
