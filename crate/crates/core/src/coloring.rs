//! Exact vertex coloring: DSATUR-ordered backtracking with a node budget.

use serde::{Deserialize, Serialize};

use crate::clique::clique_number;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::OracleLimits;

/// A total vertex coloring with colors in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    /// Relabels colors by first occurrence in vertex order.
    pub fn canonicalize(&mut self) {
        let mut relabel = vec![usize::MAX; self.colors.iter().max().map_or(0, |&c| c + 1)];
        let mut next = 0;
        for c in &mut self.colors {
            if relabel[*c] == usize::MAX {
                relabel[*c] = next;
                next += 1;
            }
            *c = relabel[*c];
        }
    }

    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringOutcome {
    Colorable(Coloring),
    NotColorable,
    BudgetExhausted,
}

impl ColoringOutcome {
    pub fn coloring(self) -> Option<Coloring> {
        match self {
            ColoringOutcome::Colorable(c) => Some(c),
            _ => None,
        }
    }
}

pub fn verify_coloring(g: &Graph, c: &Coloring, k: usize) -> bool {
    c.colors.len() == g.n()
        && c.colors.iter().all(|&x| x < k)
        && g.edges().all(|(u, v)| c.colors[u] != c.colors[v])
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    // counts[v * k + c]: neighbors of v holding color c
    counts: Vec<u32>,
    saturation: Vec<usize>,
    nodes: u64,
    budget: u64,
}

const UNCOLORED: usize = usize::MAX;

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, k: usize, budget: u64) -> Self {
        Self {
            g,
            k,
            color: vec![UNCOLORED; g.n()],
            counts: vec![0; g.n() * k],
            saturation: vec![0; g.n()],
            nodes: 0,
            budget,
        }
    }

    fn pick(&self) -> Option<usize> {
        self.g
            .vertices()
            .filter(|&v| self.color[v] == UNCOLORED)
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.counts[u * self.k + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.counts[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn free(&self, v: usize, c: usize) -> bool {
        self.counts[v * self.k + c] == 0
    }

    /// `Some(true)` once every vertex is colored, `None` when the budget runs
    /// out. A fresh color is only ever the next unused index.
    fn solve(&mut self, used: usize) -> Option<bool> {
        let Some(v) = self.pick() else {
            return Some(true);
        };
        for c in 0..self.k.min(used + 1) {
            if !self.free(v, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.assign(v, c);
            let r = self.solve(used.max(c + 1));
            if r != Some(false) {
                return r;
            }
            self.unassign(v);
        }
        Some(false)
    }

    fn greedy(mut self) -> Coloring {
        while let Some(v) = self.pick() {
            let c = (0..self.k)
                .find(|&c| self.free(v, c))
                .expect("k covers the degree bound");
            self.assign(v, c);
        }
        let k = self.k;
        let mut out = Coloring {
            k,
            colors: self.color,
        };
        out.canonicalize();
        out.k = out.colors_used();
        out
    }
}

/// DSATUR greedy coloring, no backtracking.
pub fn greedy_coloring(g: &Graph) -> Coloring {
    let max_degree = g.vertices().map(|v| g.degree(v)).max().unwrap_or(0);
    Dsatur::new(g, max_degree + 1, u64::MAX).greedy()
}

fn search_k(g: &Graph, k: usize, budget: u64) -> (ColoringOutcome, u64) {
    let mut s = Dsatur::new(g, k, budget);
    match s.solve(0) {
        Some(true) => {
            let mut c = Coloring { k, colors: s.color };
            c.canonicalize();
            (ColoringOutcome::Colorable(c), s.nodes)
        }
        Some(false) => (ColoringOutcome::NotColorable, s.nodes),
        None => (ColoringOutcome::BudgetExhausted, s.nodes),
    }
}

/// Decides `k`-colorability; colorings come back canonicalized.
pub fn is_k_colorable(g: &Graph, k: usize, limits: &OracleLimits) -> ColoringOutcome {
    if g.is_empty() {
        return ColoringOutcome::Colorable(Coloring {
            k,
            colors: Vec::new(),
        });
    }
    if k == 0 || clique_number(g) > k {
        return ColoringOutcome::NotColorable;
    }
    search_k(g, k, limits.chi_budget).0
}

/// A coloring with exactly `χ(G)` colors.
pub fn chromatic_coloring(g: &Graph, limits: &OracleLimits) -> Result<Coloring> {
    if g.is_empty() {
        return Ok(Coloring {
            k: 0,
            colors: Vec::new(),
        });
    }
    let lower = clique_number(g);
    let greedy = greedy_coloring(g);
    let upper = greedy.k;
    if lower == upper {
        return Ok(greedy);
    }
    let mut spent = 0u64;
    for k in lower..upper {
        let (outcome, nodes) = search_k(g, k, limits.chi_budget - spent);
        spent += nodes.min(limits.chi_budget - spent);
        match outcome {
            ColoringOutcome::Colorable(c) => return Ok(c),
            ColoringOutcome::NotColorable => {}
            ColoringOutcome::BudgetExhausted => {
                return Err(Error::BudgetExhausted { lower: k, upper })
            }
        }
    }
    Ok(greedy)
}

/// `χ(G)`; 0 for the empty graph.
pub fn chromatic_number(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    chromatic_coloring(g, limits).map(|c| c.k)
}
