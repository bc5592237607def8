//! Mining loop: encode once, enumerate models, extend each found pattern
//! to a maximal one, block it, and finally expand downward.
//!
//! The blocking clause for a pattern negates its item literals, which
//! also blocks every superset. Blocking a pattern before its frequent
//! supersets would therefore lose them, so each decoded pattern is first
//! grown to a maximal unblocked one by auxiliary SAT queries. Supports
//! are anti-monotone (a sub-pattern's chains include its superset's), so
//! the sub-patterns pruned by those blocking clauses are recovered
//! exactly by enumerating subsets of the maximal patterns found.

use std::collections::{BTreeMap, BTreeSet};

use crate::cnf::Lit;
use crate::dataset::{GradualItem, GradualPattern, NumericalDataset};
use crate::encoder::{
    encode, threshold_to_k, CnfInstance, EncodeOptions, SymmetryMode, VarMap,
};
use crate::error::{Error, Result};
use crate::precedence::{item_holds_along, ChainResult, PrecedenceRelation, Support};
use crate::scalar::Scalar;
use crate::solver::{EnumerationStatus, SolveResult, Solver, SolverConfig};

#[derive(Debug, Clone)]
pub struct MineOptions {
    pub encode: EncodeOptions,
    /// Keep only closed patterns (those equal to the items shared by all
    /// their maximal chains).
    pub closed: bool,
    /// Re-check every result against the longest-chain oracle.
    pub verify: bool,
    pub solver: SolverConfig,
    /// Budget for maximal-chain materialization in the closed filter;
    /// beyond it a pattern's closedness is reported as unknown.
    pub chain_cap: usize,
}

impl Default for MineOptions {
    fn default() -> Self {
        MineOptions {
            encode: EncodeOptions::default(),
            closed: false,
            verify: true,
            solver: SolverConfig::default(),
            chain_cap: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiningResult {
    pub pattern: GradualPattern,
    /// Exact support recomputed by the oracle; may exceed k/n.
    pub support: Support,
    /// One maximum-length chain, as transaction indices.
    pub witness: Vec<usize>,
    /// A k-position chain certifying support ≥ k/n, from a model.
    pub model_placement: Vec<usize>,
    /// Some(_) only when the closed filter ran; None under the filter
    /// means the maximal-chain budget was exceeded (closedness unknown).
    pub closed: Option<bool>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MineStats {
    pub vars: usize,
    pub clauses: usize,
    pub models: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub extension_queries: u64,
}

#[derive(Debug, Clone)]
pub struct MiningOutcome {
    pub results: Vec<MiningResult>,
    pub k: usize,
    pub n: usize,
    /// Complete unless a model/conflict cap cut enumeration short; capped
    /// outcomes still carry every pattern found so far.
    pub status: EnumerationStatus,
    pub stats: MineStats,
}

/// Read a pattern and its chain placement off a satisfying assignment.
pub fn decode_model(model: &[bool], vm: &VarMap) -> Result<(GradualPattern, Vec<usize>)> {
    let items: Vec<GradualItem> = vm
        .item_vars()
        .filter(|(_, var)| model[var.index()])
        .map(|(item, _)| item)
        .collect();
    let pattern = GradualPattern::new(items)
        .map_err(|e| Error::InternalConsistency(format!("model selects an invalid pattern: {e}")))?;
    let mut placement = Vec::with_capacity(vm.k());
    for position in 1..=vm.k() {
        let mut occupant = None;
        for transaction in 0..vm.n() {
            if model[vm.placement_var(transaction, position).index()] {
                if occupant.is_some() {
                    return Err(Error::InternalConsistency(format!(
                        "position {position} is doubly filled"
                    )));
                }
                occupant = Some(transaction);
            }
        }
        placement.push(occupant.ok_or_else(|| {
            Error::InternalConsistency(format!("position {position} is unfilled"))
        })?);
    }
    Ok((pattern, placement))
}

/// Clauses excluding `pattern` (and every superset) from further models:
/// the negated item literals of the pattern, and — unless the complement
/// is already structurally excluded — of its complement.
pub fn blocking_clauses_for(
    pattern: &GradualPattern,
    vm: &VarMap,
    include_complement: bool,
) -> Vec<Vec<Lit>> {
    let negate = |p: &GradualPattern| -> Vec<Lit> {
        p.items().iter().map(|&it| vm.item_var(it).negative()).collect()
    };
    let mut clauses = vec![negate(pattern)];
    if include_complement {
        clauses.push(negate(&pattern.complement()));
    }
    clauses
}

/// Clause excluding exactly this item-variable assignment (one pattern,
/// all its placements), leaving supersets and subsets findable.
fn projection_clause(model: &[bool], vm: &VarMap) -> Vec<Lit> {
    vm.item_vars()
        .map(|(_, var)| {
            if model[var.index()] {
                var.negative()
            } else {
                var.positive()
            }
        })
        .collect()
}

enum Extension {
    Extended(GradualPattern, Vec<usize>),
    Maximal,
    CapHit,
}

/// Ask the solver for a model strictly extending `base`, under the
/// accumulated blocking clauses.
fn extension_model(
    inst: &CnfInstance,
    blocking: &[Vec<Lit>],
    base: &GradualPattern,
    config: &SolverConfig,
) -> Result<Extension> {
    let vm = &inst.var_map;
    let candidates: Vec<Lit> = vm
        .item_vars()
        .filter(|(item, _)| !base.attributes().any(|a| a == item.attribute))
        .map(|(_, var)| var.positive())
        .collect();
    if candidates.is_empty() {
        return Ok(Extension::Maximal);
    }
    let mut solver = Solver::from_formula(&inst.formula, config.clone());
    let mut consistent = true;
    for clause in blocking {
        consistent &= solver.add_clause(clause);
    }
    for &item in base.items() {
        consistent &= solver.add_clause(&[vm.item_var(item).positive()]);
    }
    consistent &= solver.add_clause(&candidates);
    if !consistent {
        return Ok(Extension::Maximal);
    }
    match solver.solve() {
        SolveResult::Sat(model) => {
            let (pattern, placement) = decode_model(&model, vm)?;
            debug_assert!(pattern.len() > base.len());
            Ok(Extension::Extended(pattern, placement))
        }
        SolveResult::Unsat => Ok(Extension::Maximal),
        SolveResult::ConflictCapReached => Ok(Extension::CapHit),
    }
}

/// Mine all patterns with support ≥ `min_supp` (a fraction like "0.625"
/// or "5/8", or an absolute chain length like "5").
pub fn mine<S: Scalar>(
    ds: &NumericalDataset<S>,
    min_supp: &str,
    options: &MineOptions,
) -> Result<MiningOutcome> {
    let k = threshold_to_k(min_supp, ds.num_transactions())?;
    mine_with_k(ds, k, options)
}

/// Mine all patterns having a chain of at least `k` transactions.
pub fn mine_with_k<S: Scalar>(
    ds: &NumericalDataset<S>,
    k: usize,
    options: &MineOptions,
) -> Result<MiningOutcome> {
    if options.closed && options.encode.temporal {
        return Err(Error::Config(
            "closed filtering is not defined in temporal mode: chains cannot \
             be reversed, so the closure operator loses its symmetry"
                .into(),
        ));
    }
    let n = ds.num_transactions();
    let inst = encode(ds, k, &options.encode)?;
    let include_complement =
        options.encode.symmetry == SymmetryMode::Blocking && !options.encode.temporal;
    let canonicalize = !options.encode.temporal;

    let mut blocking: Vec<Vec<Lit>> = Vec::new();
    let mut seeds: Vec<(GradualPattern, Vec<usize>)> = Vec::new();
    let mut pipeline_error: Option<Error> = None;
    let mut side_capped = false;
    let mut extension_queries: u64 = 0;

    let mut solver = Solver::from_formula(&inst.formula, options.solver.clone());
    let enumeration = solver.enumerate(|model| {
        let (mut pattern, mut placement) = match decode_model(model, &inst.var_map) {
            Ok(decoded) => decoded,
            Err(e) => {
                pipeline_error = Some(e);
                return Vec::new(); // stop enumeration
            }
        };
        let found = pattern.clone();
        loop {
            extension_queries += 1;
            match extension_model(&inst, &blocking, &pattern, &options.solver) {
                Ok(Extension::Extended(bigger, bigger_placement)) => {
                    pattern = bigger;
                    placement = bigger_placement;
                }
                Ok(Extension::Maximal) => break,
                Ok(Extension::CapHit) => {
                    side_capped = true;
                    break;
                }
                Err(e) => {
                    pipeline_error = Some(e);
                    return Vec::new();
                }
            }
        }
        let mut clauses = blocking_clauses_for(&pattern, &inst.var_map, include_complement);
        if pattern != found {
            // The maximal pattern's clauses don't exclude the model we
            // started from; block its projection so it isn't refound.
            clauses.push(projection_clause(model, &inst.var_map));
        }
        blocking.extend(clauses.iter().cloned());
        seeds.push((pattern, placement));
        clauses
    });
    if let Some(e) = pipeline_error {
        return Err(e);
    }

    // Downward closure: every sub-pattern of a frequent pattern is
    // frequent, certified by the same placement (reversed for the
    // complement when canonicalization flips it).
    let min_len = options.encode.min_len;
    let mut placements: BTreeMap<GradualPattern, Vec<usize>> = BTreeMap::new();
    for (seed, placement) in &seeds {
        let items = seed.items();
        if items.len() >= usize::BITS as usize {
            return Err(Error::Config(format!(
                "a frequent pattern with {} items implies more sub-patterns \
                 than can be enumerated",
                items.len()
            )));
        }
        for mask in 1usize..1 << items.len() {
            if (mask.count_ones() as usize) < min_len {
                continue;
            }
            let subset: Vec<GradualItem> = items
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask >> idx & 1 == 1)
                .map(|(_, &item)| item)
                .collect();
            let sub = GradualPattern::new(subset).expect("subset of a valid pattern");
            let (representative, chain) = if canonicalize && !sub.is_canonical() {
                (sub.canonical_form(), placement.iter().rev().copied().collect())
            } else {
                (sub, placement.clone())
            };
            placements.entry(representative).or_insert(chain);
        }
    }

    let mut results = Vec::with_capacity(placements.len());
    for (pattern, model_placement) in placements {
        let relation = PrecedenceRelation::build(ds, &pattern)?;
        let chain = if options.encode.temporal {
            relation.longest_temporal_chain()
        } else {
            relation.longest_chain()
        };
        if options.verify {
            verify_result(&relation, &chain, &model_placement, k, options.encode.temporal)?;
        }
        results.push(MiningResult {
            pattern,
            support: chain.support,
            witness: chain.witness,
            model_placement,
            closed: None,
        });
    }
    if options.closed {
        closed_filter(ds, &mut results, options.chain_cap)?;
        results.retain(|r| r.closed != Some(false));
    }
    results.sort_by(|a, b| {
        b.support
            .cmp(&a.support)
            .then_with(|| a.pattern.cmp(&b.pattern))
    });

    let stats = solver.stats();
    let status = if side_capped && enumeration.status == EnumerationStatus::Complete {
        EnumerationStatus::ConflictCapReached
    } else {
        enumeration.status
    };
    Ok(MiningOutcome {
        results,
        k,
        n,
        status,
        stats: MineStats {
            vars: inst.num_vars(),
            clauses: inst.num_clauses(),
            models: stats.models,
            conflicts: stats.conflicts,
            decisions: stats.decisions,
            extension_queries,
        },
    })
}

fn verify_result(
    relation: &PrecedenceRelation,
    chain: &ChainResult,
    model_placement: &[usize],
    k: usize,
    temporal: bool,
) -> Result<()> {
    if chain.length < k {
        return Err(Error::InternalConsistency(format!(
            "solver certified a chain of {k} but the oracle's maximum is {}",
            chain.length
        )));
    }
    if chain.witness.len() != chain.length || !relation.is_chain(&chain.witness) {
        return Err(Error::InternalConsistency(
            "oracle witness is not a valid chain".into(),
        ));
    }
    if model_placement.len() != k || !relation.is_chain(model_placement) {
        return Err(Error::InternalConsistency(
            "decoded placement is not a valid chain".into(),
        ));
    }
    if temporal {
        let ascending = |seq: &[usize]| seq.windows(2).all(|w| w[0] < w[1]);
        if !ascending(model_placement) || !ascending(&chain.witness) {
            return Err(Error::InternalConsistency(
                "temporal chain does not respect row order".into(),
            ));
        }
    }
    Ok(())
}

/// Fill in each result's closed flag: a pattern is closed when it equals
/// the set of items holding along every one of its maximal chains. A
/// pattern whose maximal chains exceed `chain_cap` keeps flag None.
pub fn closed_filter<S: Scalar>(
    ds: &NumericalDataset<S>,
    results: &mut [MiningResult],
    chain_cap: usize,
) -> Result<()> {
    for result in results.iter_mut() {
        let relation = PrecedenceRelation::build(ds, &result.pattern)?;
        let chains = match relation.maximal_chains(chain_cap) {
            Ok(chains) => chains,
            Err(Error::ChainOverflow { .. }) => {
                result.closed = None;
                continue;
            }
            Err(e) => return Err(e),
        };
        let closure: BTreeSet<GradualItem> = ds
            .vocabulary()
            .into_iter()
            .filter(|&item| chains.iter().all(|c| item_holds_along(ds, c, item)))
            .collect();
        let own: BTreeSet<GradualItem> = result.pattern.items().iter().copied().collect();
        debug_assert!(own.is_subset(&closure), "closure must be extensive");
        result.closed = Some(closure == own);
    }
    Ok(())
}
