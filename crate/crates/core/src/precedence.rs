//! The order a pattern induces over transactions, and exact support via
//! longest ordered chains. This module is the ground truth the SAT
//! pipeline is verified against.

use num_rational::Ratio;

use crate::dataset::{GradualItem, GradualPattern, NumericalDataset, Variation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exact support: longest-chain length over transaction count.
pub type Support = Ratio<u64>;

#[inline]
fn holds<S: Scalar>(from: S, to: S, variation: Variation) -> bool {
    match variation {
        Variation::Inc => from <= to,
        Variation::Dec => from >= to,
    }
}

/// True when `item`'s variation holds between every consecutive pair of
/// the chain (non-strict comparisons).
pub fn item_holds_along<S: Scalar>(
    ds: &NumericalDataset<S>,
    chain: &[usize],
    item: GradualItem,
) -> bool {
    chain.windows(2).all(|w| {
        holds(
            ds.value(w[0], item.attribute),
            ds.value(w[1], item.attribute),
            item.variation,
        )
    })
}

/// Longest-chain answer: length, the support it certifies, and one
/// witnessing transaction sequence of exactly that length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    pub length: usize,
    pub support: Support,
    pub witness: Vec<usize>,
}

/// Directed relation `t_i ⊴ t_j`: every item of the pattern varies in its
/// stated direction from row i to row j (non-strict, i ≠ j). A preorder;
/// mutually related rows (ties on every pattern attribute) form strongly
/// connected components.
#[derive(Debug, Clone)]
pub struct PrecedenceRelation {
    pattern: GradualPattern,
    n: usize,
    edges: Vec<bool>, // row-major n×n
}

struct Condensation {
    /// Members per component, each ascending. Components are indexed in
    /// reverse topological order: every DAG edge points to a lower index.
    comps: Vec<Vec<usize>>,
    /// Reachability between distinct components; transitivity of the
    /// relation makes direct edges and reachability coincide.
    dag: Vec<Vec<usize>>,
}

impl PrecedenceRelation {
    pub fn build<S: Scalar>(
        ds: &NumericalDataset<S>,
        pattern: &GradualPattern,
    ) -> Result<PrecedenceRelation> {
        let n = ds.num_transactions();
        let m = ds.num_attributes();
        if let Some(bad) = pattern.attributes().find(|&a| a >= m) {
            return Err(Error::Config(format!(
                "pattern attribute {bad} out of range (dataset has {m})"
            )));
        }
        let mut edges = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                edges[i * n + j] = pattern
                    .items()
                    .iter()
                    .all(|it| holds(ds.value(i, it.attribute), ds.value(j, it.attribute), it.variation));
            }
        }
        Ok(PrecedenceRelation {
            pattern: pattern.clone(),
            n,
            edges,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pattern(&self) -> &GradualPattern {
        &self.pattern
    }

    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> bool {
        self.edges[i * self.n + j]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.edge(i, j))
    }

    pub fn predecessors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.edge(j, i))
    }

    /// Pairwise-distinct transactions, consecutively related.
    pub fn is_chain(&self, seq: &[usize]) -> bool {
        if seq.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &t in seq {
            if t >= self.n || seen[t] {
                return false;
            }
            seen[t] = true;
        }
        seq.windows(2).all(|w| self.edge(w[0], w[1]))
    }

    fn support_of(&self, length: usize) -> Support {
        Support::new(length as u64, self.n as u64)
    }

    /// Exact maximum chain length: tie groups collapse into strongly
    /// connected components, the condensation is acyclic, and the longest
    /// path weighted by component sizes is the answer.
    pub fn longest_chain(&self) -> ChainResult {
        let cond = self.condensation();
        let nc = cond.comps.len();
        let mut best = vec![0usize; nc];
        let mut next = vec![usize::MAX; nc];
        for c in 0..nc {
            let mut tail = 0;
            let mut via = usize::MAX;
            for &d in &cond.dag[c] {
                debug_assert!(d < c, "condensation edge must point backwards");
                if best[d] > tail {
                    tail = best[d];
                    via = d;
                }
            }
            best[c] = cond.comps[c].len() + tail;
            next[c] = via;
        }
        let mut start = 0;
        for c in 1..nc {
            if best[c] > best[start] {
                start = c;
            }
        }
        let mut witness = Vec::with_capacity(best[start]);
        let mut c = start;
        loop {
            witness.extend_from_slice(&cond.comps[c]);
            if next[c] == usize::MAX {
                break;
            }
            c = next[c];
        }
        debug_assert_eq!(witness.len(), best[start]);
        ChainResult {
            length: best[start],
            support: self.support_of(best[start]),
            witness,
        }
    }

    /// Longest chain whose transaction indices strictly increase in row
    /// order (the temporal reading of the dataset).
    pub fn longest_temporal_chain(&self) -> ChainResult {
        let n = self.n;
        let mut dp = vec![1usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut best = 0;
        for i in 0..n {
            for j in 0..i {
                if self.edge(j, i) && dp[j] + 1 > dp[i] {
                    dp[i] = dp[j] + 1;
                    parent[i] = j;
                }
            }
            if dp[i] > dp[best] {
                best = i;
            }
        }
        let mut witness = Vec::with_capacity(dp[best]);
        let mut cur = best;
        loop {
            witness.push(cur);
            if parent[cur] == usize::MAX {
                break;
            }
            cur = parent[cur];
        }
        witness.reverse();
        ChainResult {
            length: dp[best],
            support: self.support_of(dp[best]),
            witness,
        }
    }

    /// All chains extendable neither at either end nor by insertion:
    /// source-to-sink paths of the condensation's cover graph, each
    /// component expanded into every ordering of its members. The count
    /// can be exponential, so it is pre-computed and checked against
    /// `cap` before anything is materialized.
    pub fn maximal_chains(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let cond = self.condensation();
        let nc = cond.comps.len();

        // Cover edges: direct edges with no interposed component.
        let mut cover: Vec<Vec<usize>> = vec![Vec::new(); nc];
        let mut has_incoming = vec![false; nc];
        for u in 0..nc {
            for &v in &cond.dag[u] {
                let shortcut = cond.dag[u]
                    .iter()
                    .any(|&w| w != v && cond.dag[w].binary_search(&v).is_ok());
                if !shortcut {
                    cover[u].push(v);
                }
            }
            for &v in &cond.dag[u] {
                has_incoming[v] = true;
            }
        }

        // Chains per component: |members|! times the chains of each cover
        // successor. Computed in u128 to detect cap overflow exactly.
        let mut weight = vec![0u128; nc];
        for c in 0..nc {
            let perms = factorial(cond.comps[c].len());
            let tails: u128 = if cover[c].is_empty() {
                1
            } else {
                cover[c]
                    .iter()
                    .fold(0u128, |acc, &d| acc.saturating_add(weight[d]))
            };
            weight[c] = perms.saturating_mul(tails);
        }
        let total: u128 = (0..nc)
            .filter(|&c| !has_incoming[c])
            .fold(0u128, |acc, c| acc.saturating_add(weight[c]));
        if total > cap as u128 {
            return Err(Error::ChainOverflow { cap });
        }

        let mut out: Vec<Vec<usize>> = Vec::with_capacity(total as usize);
        let mut comp_path: Vec<usize> = Vec::new();
        let mut sources: Vec<usize> = (0..nc).filter(|&c| !has_incoming[c]).collect();
        sources.sort_unstable();
        for s in sources {
            self.walk_cover(s, &cover, &cond, &mut comp_path, &mut out);
        }
        Ok(out)
    }

    fn walk_cover(
        &self,
        c: usize,
        cover: &[Vec<usize>],
        cond: &Condensation,
        comp_path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        comp_path.push(c);
        if cover[c].is_empty() {
            let mut chain = Vec::new();
            expand_permutations(cond, comp_path, 0, &mut chain, out);
        } else {
            for &d in &cover[c] {
                self.walk_cover(d, cover, cond, comp_path, out);
            }
        }
        comp_path.pop();
    }

    fn condensation(&self) -> Condensation {
        let n = self.n;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut comp_of = vec![usize::MAX; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();

        // Iterative Tarjan; frames carry the next successor candidate.
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&(v, i)) = call.last() {
                if i == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                let mut pushed = false;
                let mut j = i;
                while j < n {
                    let w = j;
                    j += 1;
                    if w == v || !self.edge(v, w) {
                        continue;
                    }
                    if index[w] == usize::MAX {
                        call.last_mut().expect("frame").1 = j;
                        call.push((w, 0));
                        pushed = true;
                        break;
                    }
                    if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                }
                if pushed {
                    continue;
                }
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("scc stack");
                        on_stack[w] = false;
                        comp_of[w] = comps.len();
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }

        let nc = comps.len();
        let mut dag: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); nc];
        for i in 0..n {
            for j in 0..n {
                if i != j && self.edge(i, j) && comp_of[i] != comp_of[j] {
                    dag[comp_of[i]].insert(comp_of[j]);
                }
            }
        }
        Condensation {
            comps,
            dag: dag.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }
}

fn factorial(x: usize) -> u128 {
    (2..=x as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}

fn expand_permutations(
    cond: &Condensation,
    comp_path: &[usize],
    depth: usize,
    chain: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == comp_path.len() {
        out.push(chain.clone());
        return;
    }
    let members = &cond.comps[comp_path[depth]];
    for perm in permutations(members) {
        let keep = chain.len();
        chain.extend_from_slice(&perm);
        expand_permutations(cond, comp_path, depth + 1, chain, out);
        chain.truncate(keep);
    }
}

/// Lexicographic permutations of an ascending slice.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for idx in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(idx);
        for mut tail in permutations(&rest) {
            let mut seq = Vec::with_capacity(items.len());
            seq.push(head);
            seq.append(&mut tail);
            out.push(seq);
        }
    }
    out
}

/// Support of `pattern` on `ds`: longest chain length / n.
pub fn support<S: Scalar>(ds: &NumericalDataset<S>, pattern: &GradualPattern) -> Result<Support> {
    Ok(PrecedenceRelation::build(ds, pattern)?.longest_chain().support)
}
