//! CNF compilation: the models of the produced instance are exactly the
//! (pattern, k-position chain placement) pairs certifying support ≥ k/n.
//!
//! Variable layout (deterministic, so DIMACS exports are reproducible):
//! item variables first (per attribute: increasing then decreasing), then
//! placement variables position-major, then auxiliaries in emission order.

use std::fmt;
use std::ops::Range;

use crate::cnf::{CnfFormula, Lit, Var};
use crate::dataset::{GradualItem, GradualPattern, NumericalDataset, Variation};
use crate::error::{Error, Result};
use crate::precedence::PrecedenceRelation;
use crate::scalar::Scalar;

/// How the order constraint between consecutive positions is emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingVariant {
    /// One clause per (item, transaction, position): the occupant of the
    /// next position must be one of the transaction's successors.
    Successor,
    /// Ternary clauses forbidding every non-successor at the next
    /// position. Equivalent models, more clauses.
    Forbidden,
}

/// How complementary (all-signs-flipped) duplicates are suppressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryMode {
    /// No structural constraint; the miner adds a second blocking clause
    /// per model covering the complement pattern.
    Blocking,
    /// Clauses force the lowest selected attribute to carry the
    /// increasing direction, so only canonical patterns are models.
    Static,
}

#[derive(Debug, Clone)]
pub struct EncodeOptions {
    pub variant: EncodingVariant,
    pub symmetry: SymmetryMode,
    /// Minimum number of items in a pattern. Single items are trivially
    /// frequent (one column always orders every row), hence the default 2.
    pub min_len: usize,
    /// Restrict chains to strictly increasing row order.
    pub temporal: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            variant: EncodingVariant::Successor,
            symmetry: SymmetryMode::Blocking,
            min_len: 2,
            temporal: false,
        }
    }
}

/// What a SAT variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarMeaning {
    Item(GradualItem),
    /// Transaction `transaction` occupies chain position `position` (1-based).
    Placement { transaction: usize, position: usize },
    /// Sequential-counter register of a position's exactly-one block.
    PositionAux { position: usize, reg: usize },
    /// Sequential-counter register of a transaction's at-most-one block.
    TransactionAux { transaction: usize, reg: usize },
    /// Register of the minimum-length cardinality counter.
    CardinalityAux { row: usize, count: usize },
}

impl fmt::Display for VarMeaning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarMeaning::Item(item) => {
                let dir = match item.variation {
                    Variation::Inc => "INC",
                    Variation::Dec => "DEC",
                };
                write!(f, "attr {} {}", item.attribute, dir)
            }
            VarMeaning::Placement {
                transaction,
                position,
            } => write!(f, "txn {transaction} pos {position}"),
            VarMeaning::PositionAux { position, reg } => write!(f, "pos {position} reg {reg}"),
            VarMeaning::TransactionAux { transaction, reg } => {
                write!(f, "txn {transaction} reg {reg}")
            }
            VarMeaning::CardinalityAux { row, count } => write!(f, "card reg {row},{count}"),
        }
    }
}

/// Bidirectional map between SAT variables and their meanings.
/// Item variables: attribute a → 2a (increasing), 2a+1 (decreasing).
/// Placement variables: (transaction i, position j) → 2m + (j−1)·n + i.
#[derive(Debug, Clone)]
pub struct VarMap {
    n: usize,
    m: usize,
    k: usize,
    meanings: Vec<VarMeaning>,
}

impl VarMap {
    fn new(n: usize, m: usize, k: usize) -> VarMap {
        let mut meanings = Vec::with_capacity(2 * m + n * k);
        for a in 0..m {
            meanings.push(VarMeaning::Item(GradualItem::inc(a)));
            meanings.push(VarMeaning::Item(GradualItem::dec(a)));
        }
        for position in 1..=k {
            for transaction in 0..n {
                meanings.push(VarMeaning::Placement {
                    transaction,
                    position,
                });
            }
        }
        VarMap { n, m, k, meanings }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn item_var(&self, item: GradualItem) -> Var {
        debug_assert!(item.attribute < self.m);
        let offset = match item.variation {
            Variation::Inc => 0,
            Variation::Dec => 1,
        };
        Var((2 * item.attribute + offset) as u32)
    }

    /// `position` is 1-based.
    pub fn placement_var(&self, transaction: usize, position: usize) -> Var {
        debug_assert!(transaction < self.n && (1..=self.k).contains(&position));
        Var((2 * self.m + (position - 1) * self.n + transaction) as u32)
    }

    pub fn meaning(&self, var: Var) -> VarMeaning {
        self.meanings[var.index()]
    }

    pub fn num_vars(&self) -> usize {
        self.meanings.len()
    }

    pub fn aux_count(&self) -> usize {
        self.meanings.len() - 2 * self.m - self.n * self.k
    }

    /// All item variables with their meanings, in variable order.
    pub fn item_vars(&self) -> impl Iterator<Item = (GradualItem, Var)> + '_ {
        (0..self.m).flat_map(move |a| {
            [GradualItem::inc(a), GradualItem::dec(a)]
                .into_iter()
                .map(move |item| (item, self.item_var(item)))
        })
    }

    fn push_aux(&mut self, meaning: VarMeaning) {
        self.meanings.push(meaning);
    }
}

/// Clause groups in emission order, for size accounting and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintGroup {
    /// At most one direction per attribute.
    AttributeExclusion,
    /// Every chain position holds exactly one transaction.
    PositionFilled,
    /// Every transaction occupies at most one position.
    TransactionOnce,
    /// Consecutive positions respect every selected item's direction.
    Order,
    /// Lowest selected attribute carries the increasing direction.
    StaticSymmetry,
    /// Chain positions carry strictly increasing row indices.
    Temporal,
    /// At least `min_len` items selected.
    MinLength,
}

/// A compiled instance: the formula, the variable map, the chain length
/// k it certifies, and the clause ranges of each constraint group.
#[derive(Debug, Clone)]
pub struct CnfInstance {
    pub formula: CnfFormula,
    pub var_map: VarMap,
    pub k: usize,
    pub groups: Vec<(ConstraintGroup, Range<usize>)>,
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.num_clauses()
    }

    pub fn group(&self, group: ConstraintGroup) -> &[Vec<Lit>] {
        self.groups
            .iter()
            .find(|(g, _)| *g == group)
            .map(|(_, r)| &self.formula.clauses()[r.clone()])
            .unwrap_or(&[])
    }

    /// DIMACS text with a comment block mapping variables to meanings.
    pub fn to_dimacs(&self) -> String {
        let mut comments = Vec::with_capacity(self.num_vars());
        for idx in 0..self.num_vars() {
            let var = Var(idx as u32);
            let meaning = self.var_map.meaning(var);
            let tag = match meaning {
                VarMeaning::Item(_) => "x",
                VarMeaning::Placement { .. } => "y",
                _ => "aux",
            };
            comments.push(format!("{} {} = {}", tag, var.dimacs(), meaning));
        }
        self.formula.to_dimacs_string(&comments)
    }
}

/// Exact expected sizes, computed from closed-form accounting (not from
/// emission) so tests can cross-check the built instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeBreakdown {
    pub vars: usize,
    pub aux_vars: usize,
    pub clauses: usize,
    pub groups: Vec<(ConstraintGroup, usize)>,
}

impl SizeBreakdown {
    pub fn group(&self, group: ConstraintGroup) -> usize {
        self.groups
            .iter()
            .find(|(g, _)| *g == group)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }
}

/// Convert a support threshold to the chain length k.
///
/// `spec` is a fraction ("0.625" or "5/8", must lie in (0, 1]) or an
/// absolute chain length ("5"). Fractions round up: k = ⌈supp · n⌉.
/// k is clamped to at least 2 (every pattern has a length-1 chain, so
/// k = 1 is degenerate); k > n is infeasible.
pub fn threshold_to_k(spec: &str, n: usize) -> Result<usize> {
    let s = spec.trim();
    let k = if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("invalid support threshold '{s}'")))?;
        let den: u64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("invalid support threshold '{s}'")))?;
        if den == 0 {
            return Err(Error::Config("support threshold has zero denominator".into()));
        }
        ceil_fraction(num, den, n)?
    } else if s.contains('.') {
        let (int_part, frac_part) = s.split_once('.').expect("contains '.'");
        if frac_part.len() > 18 {
            return Err(Error::Config(format!(
                "support threshold '{s}' has too many digits"
            )));
        }
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part
                .parse()
                .map_err(|_| Error::Config(format!("invalid support threshold '{s}'")))?
        };
        let frac: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part
                .parse()
                .map_err(|_| Error::Config(format!("invalid support threshold '{s}'")))?
        };
        let scale = 10u64.pow(frac_part.len() as u32);
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| Error::Config(format!("support threshold '{s}' overflows")))?;
        ceil_fraction(num, scale, n)?
    } else {
        let k: u64 = s
            .parse()
            .map_err(|_| Error::Config(format!("invalid support threshold '{s}'")))?;
        if k == 0 {
            return Err(Error::Config("absolute support threshold must be ≥ 1".into()));
        }
        k as usize
    };
    let k = k.max(2);
    if k > n {
        return Err(Error::InfeasibleThreshold(format!(
            "required chain length {k} exceeds the {n} transactions"
        )));
    }
    Ok(k)
}

fn ceil_fraction(num: u64, den: u64, n: usize) -> Result<usize> {
    if num == 0 {
        return Err(Error::Config("support threshold must be positive".into()));
    }
    if num > den {
        return Err(Error::Config(format!(
            "fractional support {num}/{den} exceeds 1"
        )));
    }
    let value = (num as u128 * n as u128 + den as u128 - 1) / den as u128;
    Ok(value as usize)
}

struct Ctx {
    formula: CnfFormula,
    map: VarMap,
}

impl Ctx {
    fn add(&mut self, lits: Vec<Lit>) {
        self.formula.add_clause(lits);
    }

    fn new_aux(&mut self, meaning: VarMeaning) -> Var {
        let var = self.formula.new_var();
        self.map.push_aux(meaning);
        var
    }
}

/// Sequential at-most-one over `lits` with w−1 registers, emitted in the
/// boundary-clauses-first order: (¬z₁∨p₁), (¬z_w∨¬p_{w−1}), then for each
/// middle literal (¬z_i∨p_i), (¬p_{i−1}∨p_i), (¬z_i∨¬p_{i−1}).
fn sequential_amo(
    ctx: &mut Ctx,
    lits: &[Lit],
    mut mk_aux: impl FnMut(usize) -> VarMeaning,
) {
    let w = lits.len();
    if w <= 1 {
        return;
    }
    let regs: Vec<Var> = (0..w - 1).map(|r| ctx.new_aux(mk_aux(r))).collect();
    ctx.add(vec![!lits[0], regs[0].positive()]);
    ctx.add(vec![!lits[w - 1], regs[w - 2].negative()]);
    for i in 1..w - 1 {
        ctx.add(vec![!lits[i], regs[i].positive()]);
        ctx.add(vec![regs[i - 1].negative(), regs[i].positive()]);
        ctx.add(vec![!lits[i], regs[i - 1].negative()]);
    }
}

/// Sequential counter enforcing at most `bound` of `lits` true.
fn sequential_at_most(
    ctx: &mut Ctx,
    lits: &[Lit],
    bound: usize,
    mut mk_aux: impl FnMut(usize, usize) -> VarMeaning,
) {
    let w = lits.len();
    if bound >= w {
        return;
    }
    if bound == 0 {
        for &l in lits {
            ctx.add(vec![!l]);
        }
        return;
    }
    // regs[i][g]: at least g+1 of the first i+1 literals are true.
    let regs: Vec<Vec<Var>> = (0..w - 1)
        .map(|i| (0..bound).map(|g| ctx.new_aux(mk_aux(i, g))).collect())
        .collect();
    ctx.add(vec![!lits[0], regs[0][0].positive()]);
    for g in 1..bound {
        ctx.add(vec![regs[0][g].negative()]);
    }
    for i in 1..w - 1 {
        ctx.add(vec![!lits[i], regs[i][0].positive()]);
        ctx.add(vec![regs[i - 1][0].negative(), regs[i][0].positive()]);
        for g in 1..bound {
            ctx.add(vec![
                !lits[i],
                regs[i - 1][g - 1].negative(),
                regs[i][g].positive(),
            ]);
            ctx.add(vec![regs[i - 1][g].negative(), regs[i][g].positive()]);
        }
        ctx.add(vec![!lits[i], regs[i - 1][bound - 1].negative()]);
    }
    ctx.add(vec![!lits[w - 1], regs[w - 2][bound - 1].negative()]);
}

fn validate<S: Scalar>(
    ds: &NumericalDataset<S>,
    k: usize,
    options: &EncodeOptions,
) -> Result<()> {
    let n = ds.num_transactions();
    let m = ds.num_attributes();
    if k < 2 {
        return Err(Error::Config(format!("chain length k={k} is degenerate (minimum 2)")));
    }
    if k > n {
        return Err(Error::InfeasibleThreshold(format!(
            "required chain length {k} exceeds the {n} transactions"
        )));
    }
    if options.min_len == 0 {
        return Err(Error::Config("min_len must be at least 1".into()));
    }
    if options.min_len > m {
        return Err(Error::InfeasibleThreshold(format!(
            "min_len {} exceeds the {m} attributes",
            options.min_len
        )));
    }
    if options.temporal && options.symmetry == SymmetryMode::Static {
        return Err(Error::Config(
            "static symmetry breaking cannot be combined with temporal mode: \
             reversing a chain reverses row order, so complementary patterns \
             are not interchangeable"
                .into(),
        ));
    }
    Ok(())
}

/// Build the CNF instance for chains of exactly `k` positions.
pub fn encode<S: Scalar>(
    ds: &NumericalDataset<S>,
    k: usize,
    options: &EncodeOptions,
) -> Result<CnfInstance> {
    validate(ds, k, options)?;
    let n = ds.num_transactions();
    let m = ds.num_attributes();
    let map = VarMap::new(n, m, k);
    let mut ctx = Ctx {
        formula: CnfFormula::new(map.num_vars()),
        map,
    };
    let mut groups: Vec<(ConstraintGroup, Range<usize>)> = Vec::new();
    let mark = |ctx: &Ctx, groups: &mut Vec<(ConstraintGroup, Range<usize>)>, g| {
        let end = ctx.formula.num_clauses();
        let start = groups.last().map(|(_, r)| r.end).unwrap_or(0);
        groups.push((g, start..end));
    };

    // One direction per attribute.
    for a in 0..m {
        ctx.add(vec![
            ctx.map.item_var(GradualItem::inc(a)).negative(),
            ctx.map.item_var(GradualItem::dec(a)).negative(),
        ]);
    }
    mark(&ctx, &mut groups, ConstraintGroup::AttributeExclusion);

    // Each position holds exactly one transaction.
    for position in 1..=k {
        let lits: Vec<Lit> = (0..n)
            .map(|i| ctx.map.placement_var(i, position).positive())
            .collect();
        ctx.add(lits.clone());
        sequential_amo(&mut ctx, &lits, |reg| VarMeaning::PositionAux {
            position,
            reg,
        });
    }
    mark(&ctx, &mut groups, ConstraintGroup::PositionFilled);

    // Each transaction occupies at most one position.
    for transaction in 0..n {
        let lits: Vec<Lit> = (1..=k)
            .map(|j| ctx.map.placement_var(transaction, j).positive())
            .collect();
        sequential_amo(&mut ctx, &lits, |reg| VarMeaning::TransactionAux {
            transaction,
            reg,
        });
    }
    mark(&ctx, &mut groups, ConstraintGroup::TransactionOnce);

    // Consecutive positions respect every selected item's direction.
    encode_order(&mut ctx, ds, k, options.variant)?;
    mark(&ctx, &mut groups, ConstraintGroup::Order);

    if options.symmetry == SymmetryMode::Static {
        // A decreasing item is allowed only below some already-selected
        // attribute, so the lowest selected attribute is increasing.
        for a in 0..m {
            let mut clause = vec![ctx.map.item_var(GradualItem::dec(a)).negative()];
            for b in 0..a {
                clause.push(ctx.map.item_var(GradualItem::inc(b)).positive());
                clause.push(ctx.map.item_var(GradualItem::dec(b)).positive());
            }
            ctx.add(clause);
        }
        mark(&ctx, &mut groups, ConstraintGroup::StaticSymmetry);
    }

    if options.temporal {
        // Forbid non-increasing row indices between consecutive positions.
        for j in 1..k {
            for i in 0..n {
                for i2 in 0..=i {
                    ctx.add(vec![
                        ctx.map.placement_var(i, j).negative(),
                        ctx.map.placement_var(i2, j + 1).negative(),
                    ]);
                }
            }
        }
        mark(&ctx, &mut groups, ConstraintGroup::Temporal);
    }

    // At least min_len items selected.
    let item_lits: Vec<Lit> = ctx.map.item_vars().map(|(_, v)| v.positive()).collect();
    if options.min_len == 1 {
        ctx.add(item_lits);
    } else {
        // ≥ r of 2m true ⟺ ≤ 2m−r of the negations true.
        let negated: Vec<Lit> = item_lits.iter().map(|&l| !l).collect();
        let bound = 2 * m - options.min_len;
        sequential_at_most(&mut ctx, &negated, bound, |row, count| {
            VarMeaning::CardinalityAux { row, count }
        });
    }
    mark(&ctx, &mut groups, ConstraintGroup::MinLength);

    Ok(CnfInstance {
        formula: ctx.formula,
        var_map: ctx.map,
        k,
        groups,
    })
}

/// Single-item relations for every vocabulary item, in vocabulary order.
fn item_relations<S: Scalar>(ds: &NumericalDataset<S>) -> Result<Vec<(GradualItem, PrecedenceRelation)>> {
    ds.vocabulary()
        .into_iter()
        .map(|item| {
            let pattern = GradualPattern::new(vec![item])?;
            Ok((item, PrecedenceRelation::build(ds, &pattern)?))
        })
        .collect()
}

fn encode_order<S: Scalar>(
    ctx: &mut Ctx,
    ds: &NumericalDataset<S>,
    k: usize,
    variant: EncodingVariant,
) -> Result<()> {
    let n = ds.num_transactions();
    for (item, rel) in item_relations(ds)? {
        let x = ctx.map.item_var(item);
        for i in 0..n {
            let preds = rel.predecessors(i).count();
            let succs: Vec<usize> = rel.successors(i).collect();
            let is_succ: Vec<bool> = {
                let mut mask = vec![false; n];
                for &l in &succs {
                    mask[l] = true;
                }
                mask
            };
            for j in 1..k {
                let y_ij = ctx.map.placement_var(i, j);
                // Position j needs j−1 predecessors before it and k−j
                // successors after it; otherwise the item rules it out.
                if preds < j - 1 || succs.len() < k - j {
                    ctx.add(vec![x.negative(), y_ij.negative()]);
                    continue;
                }
                match variant {
                    EncodingVariant::Successor => {
                        let mut clause = vec![x.negative(), y_ij.negative()];
                        clause.extend(
                            succs
                                .iter()
                                .map(|&l| ctx.map.placement_var(l, j + 1).positive()),
                        );
                        ctx.add(clause);
                    }
                    EncodingVariant::Forbidden => {
                        for l in 0..n {
                            if l == i || is_succ[l] {
                                continue;
                            }
                            ctx.add(vec![
                                x.negative(),
                                y_ij.negative(),
                                ctx.map.placement_var(l, j + 1).negative(),
                            ]);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn amo_clauses(width: usize) -> usize {
    if width >= 2 {
        3 * width - 4
    } else {
        0
    }
}

fn amo_aux(width: usize) -> usize {
    width.saturating_sub(1)
}

/// Closed-form sizes for the instance `encode` would build.
pub fn size_breakdown<S: Scalar>(
    ds: &NumericalDataset<S>,
    k: usize,
    options: &EncodeOptions,
) -> Result<SizeBreakdown> {
    validate(ds, k, options)?;
    let n = ds.num_transactions();
    let m = ds.num_attributes();

    let order = match options.variant {
        EncodingVariant::Successor => 2 * m * n * (k - 1),
        EncodingVariant::Forbidden => {
            let mut total = 0;
            for (_, rel) in item_relations(ds)? {
                for i in 0..n {
                    let preds = rel.predecessors(i).count();
                    let succ_count = rel.successors(i).count();
                    for j in 1..k {
                        if preds < j - 1 || succ_count < k - j {
                            total += 1;
                        } else {
                            total += n - 1 - succ_count;
                        }
                    }
                }
            }
            total
        }
    };

    let (minlen_clauses, minlen_aux) = if options.min_len == 1 {
        (1, 0)
    } else {
        let w = 2 * m;
        let bound = w - options.min_len;
        (
            bound + 1 + (w - 2) * (2 * bound + 1),
            (w - 1) * bound,
        )
    };

    let mut groups = vec![
        (ConstraintGroup::AttributeExclusion, m),
        (ConstraintGroup::PositionFilled, k * (1 + amo_clauses(n))),
        (ConstraintGroup::TransactionOnce, n * amo_clauses(k)),
        (ConstraintGroup::Order, order),
    ];
    if options.symmetry == SymmetryMode::Static {
        groups.push((ConstraintGroup::StaticSymmetry, m));
    }
    if options.temporal {
        groups.push((ConstraintGroup::Temporal, (k - 1) * n * (n + 1) / 2));
    }
    groups.push((ConstraintGroup::MinLength, minlen_clauses));

    let aux_vars = k * amo_aux(n) + n * amo_aux(k) + minlen_aux;
    Ok(SizeBreakdown {
        vars: 2 * m + n * k + aux_vars,
        aux_vars,
        clauses: groups.iter().map(|(_, c)| c).sum(),
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{SolveResult, Solver, SolverConfig};
    use crate::test_fixtures::table1;

    fn instance(k: usize, options: &EncodeOptions) -> CnfInstance {
        encode(&table1(), k, options).unwrap()
    }

    #[test]
    fn threshold_conversions() {
        assert_eq!(threshold_to_k("5/8", 8).unwrap(), 5);
        assert_eq!(threshold_to_k("0.625", 8).unwrap(), 5);
        assert_eq!(threshold_to_k("1.0", 8).unwrap(), 8);
        assert_eq!(threshold_to_k("0.3", 8).unwrap(), 3);
        assert_eq!(threshold_to_k("5", 8).unwrap(), 5);
        // k = 1 is degenerate, clamped up.
        assert_eq!(threshold_to_k("1", 8).unwrap(), 2);
        assert_eq!(threshold_to_k("0.01", 8).unwrap(), 2);
        // 0.4 · 5 must round up to 2 exactly (no float ceiling slop).
        assert_eq!(threshold_to_k("0.4", 5).unwrap(), 2);
        assert!(matches!(
            threshold_to_k("1.5", 8),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            threshold_to_k("0", 8),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            threshold_to_k("9", 8),
            Err(Error::InfeasibleThreshold(_))
        ));
        assert!(matches!(
            threshold_to_k("2", 1),
            Err(Error::InfeasibleThreshold(_))
        ));
        assert!(threshold_to_k("x", 8).is_err());
        assert!(threshold_to_k("1/0", 8).is_err());
    }

    #[test]
    fn attribute_exclusion_one_clause_per_attribute() {
        let inst = instance(5, &EncodeOptions::default());
        let group = inst.group(ConstraintGroup::AttributeExclusion);
        assert_eq!(group.len(), 3);
        let vm = &inst.var_map;
        assert_eq!(
            group[0],
            vec![
                vm.item_var(GradualItem::inc(0)).negative(),
                vm.item_var(GradualItem::dec(0)).negative()
            ]
        );
    }

    #[test]
    fn attribute_exclusion_scales_to_wide_datasets() {
        let names: Vec<String> = (0..117).map(|a| format!("a{a}")).collect();
        let rows: Vec<Vec<f64>> = (0..3)
            .map(|i| (0..117).map(|j| ((i * 31 + j * 7) % 10) as f64).collect())
            .collect();
        let ds = NumericalDataset::from_rows(names, rows).unwrap();
        let inst = encode(&ds, 2, &EncodeOptions::default()).unwrap();
        assert_eq!(inst.group(ConstraintGroup::AttributeExclusion).len(), 117);
    }

    #[test]
    fn exclusion_clause_propagates_under_the_solver() {
        let inst = instance(5, &EncodeOptions::default());
        let vm = &inst.var_map;
        let mut solver = Solver::from_formula(&inst.formula, SolverConfig::default());
        assert!(solver.add_clause(&[vm.item_var(GradualItem::inc(0)).positive()]));
        match solver.solve() {
            SolveResult::Sat(model) => {
                assert!(model[vm.item_var(GradualItem::inc(0)).index()]);
                assert!(!model[vm.item_var(GradualItem::dec(0)).index()]);
            }
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn position_block_matches_the_sequential_expansion() {
        // n = 3 expansion in the boundary-first order:
        // (¬y₁∨p₁) (¬y₃∨¬p₂) (¬y₂∨p₂) (¬p₁∨p₂) (¬y₂∨¬p₁), after the
        // at-least-one clause.
        let ds =
            NumericalDataset::<f64>::parse_csv("a,b\n1,1\n2,2\n3,3\n", false).unwrap();
        let inst = encode(&ds, 2, &EncodeOptions::default()).unwrap();
        let vm = &inst.var_map;
        let y: Vec<Var> = (0..3).map(|i| vm.placement_var(i, 1)).collect();
        // First auxiliaries allocated are position 1's two registers.
        let p1 = Var((2 * 2 + 3 * 2) as u32);
        let p2 = Var((2 * 2 + 3 * 2 + 1) as u32);
        assert_eq!(
            vm.meaning(p1),
            VarMeaning::PositionAux { position: 1, reg: 0 }
        );
        let block = &inst.group(ConstraintGroup::PositionFilled)[..6];
        assert_eq!(block[0], vec![y[0].positive(), y[1].positive(), y[2].positive()]);
        assert_eq!(block[1], vec![y[0].negative(), p1.positive()]);
        assert_eq!(block[2], vec![y[2].negative(), p2.negative()]);
        assert_eq!(block[3], vec![y[1].negative(), p2.positive()]);
        assert_eq!(block[4], vec![p1.negative(), p2.positive()]);
        assert_eq!(block[5], vec![y[1].negative(), p1.negative()]);
    }

    /// Model count of a clause set over exactly the variables it mentions.
    fn block_model_count(clauses: &[Vec<Lit>]) -> usize {
        let mut vars: Vec<Var> = clauses.iter().flatten().map(|l| l.var()).collect();
        vars.sort_unstable();
        vars.dedup();
        let w = vars.len();
        let position = |v: Var| vars.binary_search(&v).unwrap();
        (0..1usize << w)
            .filter(|bits| {
                clauses.iter().all(|c| {
                    c.iter()
                        .any(|l| l.eval(bits >> position(l.var()) & 1 == 1))
                })
            })
            .count()
    }

    #[test]
    fn exactly_one_blocks_have_n_models_and_n_minus_1_registers() {
        for n in 2..=5usize {
            let csv = format!(
                "a,b\n{}",
                (0..n).map(|i| format!("{i},{i}\n")).collect::<String>()
            );
            let ds = NumericalDataset::<f64>::parse_csv(&csv, false).unwrap();
            let inst = encode(&ds, 2, &EncodeOptions::default()).unwrap();
            let per_position = 1 + amo_clauses(n);
            let group = inst.group(ConstraintGroup::PositionFilled);
            assert_eq!(group.len(), 2 * per_position);
            // Registers are functionally determined under exactly-one, so
            // the block has exactly n models over its own variables.
            assert_eq!(block_model_count(&group[..per_position]), n);
            let aux_per_position = (0..inst.num_vars())
                .filter(|&v| {
                    matches!(
                        inst.var_map.meaning(Var(v as u32)),
                        VarMeaning::PositionAux { position: 1, .. }
                    )
                })
                .count();
            assert_eq!(aux_per_position, n - 1);
        }
    }

    #[test]
    fn transaction_blocks_forbid_double_placement() {
        let inst = instance(5, &EncodeOptions::default());
        let vm = &inst.var_map;
        assert_eq!(
            inst.group(ConstraintGroup::TransactionOnce).len(),
            8 * amo_clauses(5)
        );
        let mut solver = Solver::from_formula(&inst.formula, SolverConfig::default());
        assert!(solver.add_clause(&[vm.placement_var(0, 1).positive()]));
        assert!(solver.add_clause(&[vm.placement_var(0, 2).positive()]));
        assert_eq!(solver.solve(), SolveResult::Unsat);
    }

    #[test]
    fn successor_clauses_follow_the_feasibility_rule() {
        // Under p increasing, t4's only successor is t8 (both p = 13).
        let inst = instance(3, &EncodeOptions::default());
        let vm = &inst.var_map;
        let x = vm.item_var(GradualItem::inc(0));
        let order = inst.group(ConstraintGroup::Order);
        // j = k−1 = 2: the successor clause proper.
        let successor = vec![
            x.negative(),
            vm.placement_var(3, 2).negative(),
            vm.placement_var(7, 3).positive(),
        ];
        assert!(order.contains(&successor), "missing successor clause");
        // j = 1 needs k−j = 2 successors but t4 has 1: simplified binary.
        let simplified = vec![x.negative(), vm.placement_var(3, 1).negative()];
        assert!(order.contains(&simplified), "missing feasibility clause");
    }

    #[test]
    fn no_successor_transactions_get_binary_clauses() {
        // Under r decreasing, t4 (r = 5, the minimum) has no successor, so
        // every position below k rules it out.
        let inst = instance(3, &EncodeOptions::default());
        let vm = &inst.var_map;
        let x = vm.item_var(GradualItem::dec(2));
        let order = inst.group(ConstraintGroup::Order);
        for j in 1..3 {
            let clause = vec![x.negative(), vm.placement_var(3, j).negative()];
            assert!(order.contains(&clause), "position {j}");
        }
    }

    #[test]
    fn successor_group_has_one_clause_per_item_txn_position() {
        for k in [3, 5] {
            let inst = instance(k, &EncodeOptions::default());
            assert_eq!(
                inst.group(ConstraintGroup::Order).len(),
                2 * 3 * 8 * (k - 1)
            );
        }
    }

    fn xy_projections(inst: &CnfInstance) -> std::collections::BTreeSet<Vec<bool>> {
        let xy = 2 * inst.var_map.m() + inst.var_map.n() * inst.k;
        let mut out = std::collections::BTreeSet::new();
        let mut solver = Solver::from_formula(&inst.formula, SolverConfig::default());
        solver.enumerate(|model| {
            out.insert(model[..xy].to_vec());
            vec![(0..xy)
                .map(|i| Lit::new(Var(i as u32), !model[i]))
                .collect()]
        });
        out
    }

    #[test]
    fn successor_and_forbidden_encodings_have_equal_projections() {
        let successor = instance(3, &EncodeOptions::default());
        let forbidden = instance(
            3,
            &EncodeOptions {
                variant: EncodingVariant::Forbidden,
                ..EncodeOptions::default()
            },
        );
        let a = xy_projections(&successor);
        let b = xy_projections(&forbidden);
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn min_length_one_is_a_single_covering_clause() {
        let inst = instance(
            5,
            &EncodeOptions {
                min_len: 1,
                ..EncodeOptions::default()
            },
        );
        let group = inst.group(ConstraintGroup::MinLength);
        assert_eq!(group.len(), 1);
        assert_eq!(group[0].len(), 6);
        assert!(group[0].iter().all(|l| l.is_positive()));
    }

    #[test]
    fn min_length_two_rejects_single_item_patterns() {
        let inst = instance(5, &EncodeOptions::default());
        let vm = &inst.var_map;
        let mut solver = Solver::from_formula(&inst.formula, SolverConfig::default());
        // Force exactly the single item p+ on: no model may remain.
        for (item, var) in vm.item_vars() {
            let lit = if item == GradualItem::inc(0) {
                var.positive()
            } else {
                var.negative()
            };
            assert!(solver.add_clause(&[lit]));
        }
        assert_eq!(solver.solve(), SolveResult::Unsat);
    }

    #[test]
    fn min_length_above_attribute_count_is_infeasible() {
        let err = encode(
            &table1(),
            5,
            &EncodeOptions {
                min_len: 4,
                ..EncodeOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::InfeasibleThreshold(_)));
    }

    #[test]
    fn static_symmetry_forbids_non_canonical_selections() {
        let options = EncodeOptions {
            symmetry: SymmetryMode::Static,
            min_len: 1,
            ..EncodeOptions::default()
        };
        let inst = instance(5, &options);
        assert_eq!(inst.group(ConstraintGroup::StaticSymmetry).len(), 3);
        // (a₀−) alone violates the break; (a₀+) is allowed.
        let vm = &inst.var_map;
        // add_clause may report immediate unsatisfiability; solve() below
        // is the assertion that matters.
        let force_single = |solver: &mut Solver, selected: GradualItem| {
            for (item, var) in vm.item_vars() {
                let lit = if item == selected {
                    var.positive()
                } else {
                    var.negative()
                };
                solver.add_clause(&[lit]);
            }
        };
        let mut reject = Solver::from_formula(&inst.formula, SolverConfig::default());
        force_single(&mut reject, GradualItem::dec(0));
        assert_eq!(reject.solve(), SolveResult::Unsat);
        let mut accept = Solver::from_formula(&inst.formula, SolverConfig::default());
        force_single(&mut accept, GradualItem::inc(0));
        assert!(matches!(accept.solve(), SolveResult::Sat(_)));
    }

    #[test]
    fn static_symmetry_halves_item_projections() {
        let blocking = instance(3, &EncodeOptions::default());
        let statics = instance(
            3,
            &EncodeOptions {
                symmetry: SymmetryMode::Static,
                ..EncodeOptions::default()
            },
        );
        let item_projections = |inst: &CnfInstance| {
            let xs = 2 * inst.var_map.m();
            let mut out = std::collections::BTreeSet::new();
            let mut solver = Solver::from_formula(&inst.formula, SolverConfig::default());
            solver.enumerate(|model| {
                out.insert(model[..xs].to_vec());
                vec![(0..xs)
                    .map(|i| Lit::new(Var(i as u32), !model[i]))
                    .collect()]
            });
            out
        };
        let all = item_projections(&blocking);
        let half = item_projections(&statics);
        assert_eq!(all.len(), 2 * half.len());
        assert!(half.iter().all(|p| all.contains(p)));
    }

    #[test]
    fn temporal_clauses_forbid_non_increasing_rows() {
        let options = EncodeOptions {
            temporal: true,
            ..EncodeOptions::default()
        };
        let inst = encode(&table1(), 4, &options).unwrap();
        assert_eq!(
            inst.group(ConstraintGroup::Temporal).len(),
            3 * 8 * 9 / 2
        );
        let vm = &inst.var_map;
        // t5 at position 1 followed by t3 at position 2 reverses row order.
        let mut solver = Solver::from_formula(&inst.formula, SolverConfig::default());
        assert!(solver.add_clause(&[vm.placement_var(4, 1).positive()]));
        assert!(solver.add_clause(&[vm.placement_var(2, 2).positive()]));
        assert_eq!(solver.solve(), SolveResult::Unsat);
    }

    #[test]
    fn temporal_with_static_symmetry_is_rejected() {
        let options = EncodeOptions {
            temporal: true,
            symmetry: SymmetryMode::Static,
            ..EncodeOptions::default()
        };
        assert!(matches!(
            encode(&table1(), 4, &options),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn build_sizes_match_the_closed_form() {
        let ds = table1();
        let mut options_set = vec![
            EncodeOptions::default(),
            EncodeOptions {
                variant: EncodingVariant::Forbidden,
                ..EncodeOptions::default()
            },
            EncodeOptions {
                symmetry: SymmetryMode::Static,
                min_len: 1,
                ..EncodeOptions::default()
            },
            EncodeOptions {
                temporal: true,
                min_len: 3,
                ..EncodeOptions::default()
            },
        ];
        for min_len in 1..=3 {
            options_set.push(EncodeOptions {
                min_len,
                ..EncodeOptions::default()
            });
        }
        for options in &options_set {
            for k in 2..=8 {
                let inst = encode(&ds, k, options).unwrap();
                let expected = size_breakdown(&ds, k, options).unwrap();
                assert_eq!(inst.num_vars(), expected.vars, "vars k={k} {options:?}");
                assert_eq!(
                    inst.num_clauses(),
                    expected.clauses,
                    "clauses k={k} {options:?}"
                );
                assert_eq!(inst.var_map.aux_count(), expected.aux_vars);
                for (group, count) in &expected.groups {
                    assert_eq!(
                        inst.group(*group).len(),
                        *count,
                        "group {group:?} k={k} {options:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn table1_instance_is_sat_at_k5_and_unsat_at_k8() {
        let sat = instance(5, &EncodeOptions::default());
        // Variable count before min-length auxiliaries: 2m + nk + k(n−1) + n(k−1).
        assert_eq!(
            sat.num_vars() - 20, // min_len=2 Sinz auxiliaries: (2m−1)(2m−2) = 20
            6 + 40 + 5 * 7 + 8 * 4
        );
        let mut s = Solver::from_formula(&sat.formula, SolverConfig::default());
        assert!(matches!(s.solve(), SolveResult::Sat(_)));

        let unsat = instance(8, &EncodeOptions::default());
        let mut u = Solver::from_formula(&unsat.formula, SolverConfig::default());
        assert_eq!(u.solve(), SolveResult::Unsat);
    }

    #[test]
    fn variable_count_is_affine_in_k_with_slope_3n_minus_1() {
        let ds = table1();
        let options = EncodeOptions::default();
        let v: Vec<usize> = (2..=8)
            .map(|k| size_breakdown(&ds, k, &options).unwrap().vars)
            .collect();
        for w in v.windows(2) {
            assert_eq!(w[1] - w[0], 3 * 8 - 1);
        }
    }

    #[test]
    fn dimacs_export_names_every_variable() {
        let inst = instance(3, &EncodeOptions::default());
        let text = inst.to_dimacs();
        assert!(text.contains("c x 1 = attr 0 INC"));
        assert!(text.contains("c x 2 = attr 0 DEC"));
        assert!(text.contains("c y 7 = txn 0 pos 1"));
        assert!(text.contains("aux"));
        let parsed = CnfFormula::parse_dimacs(text.as_bytes()).unwrap();
        assert_eq!(parsed.num_vars(), inst.num_vars());
        assert_eq!(parsed.clauses(), inst.formula.clauses());
    }

    #[test]
    fn var_map_is_a_bijection_over_disjoint_ranges() {
        let inst = instance(4, &EncodeOptions::default());
        let vm = &inst.var_map;
        let mut seen = vec![false; inst.num_vars()];
        for (item, var) in vm.item_vars() {
            assert_eq!(vm.meaning(var), VarMeaning::Item(item));
            assert!(!seen[var.index()]);
            seen[var.index()] = true;
        }
        for j in 1..=4 {
            for i in 0..8 {
                let var = vm.placement_var(i, j);
                assert_eq!(
                    vm.meaning(var),
                    VarMeaning::Placement {
                        transaction: i,
                        position: j
                    }
                );
                assert!(!seen[var.index()]);
                seen[var.index()] = true;
            }
        }
        assert_eq!(vm.num_vars(), 2 * 3 + 8 * 4 + vm.aux_count());
    }

    #[test]
    fn clause_hygiene_holds_everywhere() {
        for options in [
            EncodeOptions::default(),
            EncodeOptions {
                variant: EncodingVariant::Forbidden,
                symmetry: SymmetryMode::Static,
                min_len: 3,
                ..EncodeOptions::default()
            },
        ] {
            let inst = encode(&table1(), 4, &options).unwrap();
            for clause in inst.formula.clauses() {
                assert!(!clause.is_empty());
                let mut sorted: Vec<_> = clause.iter().map(|l| l.code()).collect();
                sorted.sort_unstable();
                for w in sorted.windows(2) {
                    assert_ne!(w[0], w[1], "duplicate literal");
                    assert_ne!(w[0] ^ 1, w[1], "tautology");
                }
                assert!(clause.iter().all(|l| l.var().index() < inst.num_vars()));
            }
        }
    }
}
