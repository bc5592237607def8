//! CDCL SAT solver extended for AllSAT enumeration: two-watched-literal
//! propagation, first-UIP conflict analysis, activity-driven decisions
//! with saved phases, geometric restarts, learnt-clause reduction, and
//! permanent blocking clauses supplied by a per-model callback.

use crate::cnf::{CnfFormula, Lit, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LBool {
    True,
    False,
    Undef,
}

#[inline]
fn lit_value(assign: &[LBool], lit: Lit) -> LBool {
    match assign[lit.var().index()] {
        LBool::Undef => LBool::Undef,
        LBool::True if lit.is_positive() => LBool::True,
        LBool::True => LBool::False,
        LBool::False if lit.is_positive() => LBool::False,
        LBool::False => LBool::True,
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ClauseRef(usize);

#[derive(Debug)]
struct Clause {
    lits: Vec<Lit>,
    activity: f64,
    learnt: bool,
    deleted: bool,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Jitters initial variable activities to vary the search order;
    /// 0 leaves them flat (pure index order until conflicts bump them).
    pub seed: u64,
    pub restarts: bool,
    /// Conflicts before the first restart; grows geometrically.
    pub restart_base: u64,
    pub restart_factor: f64,
    /// Conflicts between learnt-database reductions.
    pub reduce_interval: u64,
    pub max_models: Option<u64>,
    pub max_conflicts: Option<u64>,
    /// Keep copies of learnt clauses for auditing.
    pub record_learnts: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            restarts: true,
            restart_base: 100,
            restart_factor: 1.5,
            reduce_interval: 2000,
            max_models: None,
            max_conflicts: None,
            record_learnts: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub models: u64,
    pub learnt: u64,
    pub reduced: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationStatus {
    /// Search space exhausted: every model was reported.
    Complete,
    ModelCapReached,
    ConflictCapReached,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationResult {
    pub models: u64,
    pub status: EnumerationStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Vec<bool>),
    Unsat,
    ConflictCapReached,
}

pub struct Solver {
    config: SolverConfig,
    num_vars: usize,
    db: Vec<Clause>,
    watches: Vec<Vec<ClauseRef>>, // indexed by Lit::code(): clauses watching that literal
    assign: Vec<LBool>,
    level: Vec<u32>,
    reason: Vec<Option<ClauseRef>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    saved_phase: Vec<bool>,
    /// Next decision takes positive polarity: set at the start of search,
    /// after every restart, and after every model backjump.
    force_positive: bool,
    ok: bool,
    seen: Vec<bool>,
    stats: SolverStats,
    conflicts_since_restart: u64,
    restart_limit: f64,
    conflicts_since_reduce: u64,
    recorded_learnts: Vec<Vec<Lit>>,
}

impl Solver {
    pub fn new(num_vars: usize, config: SolverConfig) -> Solver {
        let mut activity = vec![0.0; num_vars];
        if config.seed != 0 {
            let mut state = config.seed;
            for a in activity.iter_mut() {
                *a = (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64 * 1e-6;
            }
        }
        let restart_limit = config.restart_base as f64;
        Solver {
            config,
            num_vars,
            db: Vec::new(),
            watches: vec![Vec::new(); num_vars * 2],
            assign: vec![LBool::Undef; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            cla_inc: 1.0,
            saved_phase: vec![false; num_vars],
            force_positive: true,
            ok: true,
            seen: vec![false; num_vars],
            stats: SolverStats::default(),
            conflicts_since_restart: 0,
            restart_limit,
            conflicts_since_reduce: 0,
            recorded_learnts: Vec::new(),
        }
    }

    pub fn from_formula(formula: &CnfFormula, config: SolverConfig) -> Solver {
        let mut solver = Solver::new(formula.num_vars(), config);
        for clause in formula.clauses() {
            if !solver.add_clause(clause) {
                break;
            }
        }
        solver
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// Learnt clauses recorded when `config.record_learnts` is on.
    pub fn recorded_learnts(&self) -> &[Vec<Lit>] {
        &self.recorded_learnts
    }

    #[inline]
    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Add a permanent clause (an input or a blocking clause). Only legal
    /// at decision level 0. Duplicate literals collapse, tautologies are
    /// dropped, and level-0 falsified literals are pruned. Returns false
    /// once the formula is unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        debug_assert_eq!(self.decision_level(), 0, "clauses are added at level 0");
        if !self.ok {
            return false;
        }
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return true; // tautology: contains l and ¬l
        }
        let mut kept = Vec::with_capacity(c.len());
        for l in c {
            match lit_value(&self.assign, l) {
                LBool::True => return true, // already satisfied forever
                LBool::False => {}          // permanently false, prune
                LBool::Undef => kept.push(l),
            }
        }
        match kept.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(kept[0], None);
                true
            }
            _ => {
                let cref = ClauseRef(self.db.len());
                self.watches[kept[0].code()].push(cref);
                self.watches[kept[1].code()].push(cref);
                self.db.push(Clause {
                    lits: kept,
                    activity: 0.0,
                    learnt: false,
                    deleted: false,
                });
                true
            }
        }
    }

    fn enqueue(&mut self, lit: Lit, reason: Option<ClauseRef>) {
        let v = lit.var().index();
        debug_assert_eq!(self.assign[v], LBool::Undef);
        self.assign[v] = if lit.is_positive() {
            LBool::True
        } else {
            LBool::False
        };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    fn propagate(&mut self) -> Option<ClauseRef> {
        while self.qhead < self.trail.len() {
            let lit = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let fl = !lit; // literal that just became false
            let mut ws = std::mem::take(&mut self.watches[fl.code()]);
            let mut conflict = None;
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let cref = ws[i];
                i += 1;
                enum Action {
                    Drop,
                    Keep,
                    Move(Lit),
                    Unit(Lit),
                    Conflict,
                }
                let action = {
                    let assign = &self.assign;
                    let clause = &mut self.db[cref.0];
                    if clause.deleted {
                        Action::Drop
                    } else {
                        if clause.lits[0] == fl {
                            clause.lits.swap(0, 1);
                        }
                        debug_assert_eq!(clause.lits[1], fl);
                        let first = clause.lits[0];
                        if lit_value(assign, first) == LBool::True {
                            Action::Keep
                        } else if let Some(k) = (2..clause.lits.len())
                            .find(|&k| lit_value(assign, clause.lits[k]) != LBool::False)
                        {
                            clause.lits.swap(1, k);
                            Action::Move(clause.lits[1])
                        } else if lit_value(assign, first) == LBool::False {
                            Action::Conflict
                        } else {
                            Action::Unit(first)
                        }
                    }
                };
                match action {
                    Action::Drop => {}
                    Action::Keep => {
                        ws[j] = cref;
                        j += 1;
                    }
                    Action::Move(to) => {
                        self.watches[to.code()].push(cref);
                    }
                    Action::Unit(first) => {
                        ws[j] = cref;
                        j += 1;
                        self.enqueue(first, Some(cref));
                    }
                    Action::Conflict => {
                        ws[j] = cref;
                        j += 1;
                        while i < ws.len() {
                            ws[j] = ws[i];
                            j += 1;
                            i += 1;
                        }
                        conflict = Some(cref);
                        break 'watchers;
                    }
                }
            }
            ws.truncate(j);
            self.watches[fl.code()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    /// First-UIP learning: resolve backwards over the trail until exactly
    /// one current-level literal remains. Returns the asserting clause
    /// (UIP negation first, a highest-remaining-level literal second) and
    /// the backjump level.
    fn analyze(&mut self, confl: ClauseRef) -> (Vec<Lit>, usize) {
        let current = self.decision_level() as u32;
        let mut learnt: Vec<Lit> = vec![Lit::new(Var(0), true)]; // slot 0 = UIP
        let mut to_clear: Vec<usize> = Vec::new();
        let mut pending = 0usize; // unresolved current-level literals
        let mut p: Option<Lit> = None;
        let mut cref = Some(confl);
        let mut idx = self.trail.len();

        loop {
            let c = cref.expect("resolution requires a reason clause");
            if self.db[c.0].learnt {
                self.bump_clause(c);
            }
            let lits = self.db[c.0].lits.clone();
            for q in lits {
                if p == Some(q) {
                    continue;
                }
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    to_clear.push(v);
                    self.bump_var(q.var());
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var().index()] {
                    break;
                }
            }
            let pl = self.trail[idx];
            self.seen[pl.var().index()] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = !pl;
                break;
            }
            p = Some(pl);
            cref = self.reason[pl.var().index()];
        }
        for v in to_clear {
            self.seen[v] = false;
        }

        let btl = if learnt.len() == 1 {
            0
        } else {
            let mut widest = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[widest].var().index()] {
                    widest = i;
                }
            }
            learnt.swap(1, widest);
            self.level[learnt[1].var().index()] as usize
        };
        (learnt, btl)
    }

    fn bump_var(&mut self, v: Var) {
        let a = &mut self.activity[v.index()];
        *a += self.var_inc;
        if *a > 1e100 {
            for x in self.activity.iter_mut() {
                *x *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
    }

    fn bump_clause(&mut self, c: ClauseRef) {
        let a = &mut self.db[c.0].activity;
        *a += self.cla_inc;
        if *a > 1e20 {
            for cl in self.db.iter_mut().filter(|cl| cl.learnt) {
                cl.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn decay_activities(&mut self) {
        self.var_inc /= 0.95;
        self.cla_inc /= 0.999;
    }

    fn backjump(&mut self, target: usize) {
        if self.decision_level() <= target {
            return;
        }
        let lim = self.trail_lim[target];
        for idx in (lim..self.trail.len()).rev() {
            let lit = self.trail[idx];
            let v = lit.var().index();
            self.saved_phase[v] = lit.is_positive();
            self.assign[v] = LBool::Undef;
            self.reason[v] = None;
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(target);
        self.qhead = lim;
    }

    fn attach_learnt(&mut self, lits: Vec<Lit>) {
        debug_assert!(lits.len() >= 2);
        let cref = ClauseRef(self.db.len());
        self.watches[lits[0].code()].push(cref);
        self.watches[lits[1].code()].push(cref);
        let first = lits[0];
        self.db.push(Clause {
            lits,
            activity: self.cla_inc,
            learnt: true,
            deleted: false,
        });
        self.enqueue(first, Some(cref));
    }

    fn is_reason(&self, c: ClauseRef) -> bool {
        let first = self.db[c.0].lits[0];
        self.assign[first.var().index()] != LBool::Undef
            && self.reason[first.var().index()] == Some(c)
    }

    /// Drop the lowest-activity half of the learnt clauses. Reason
    /// clauses of the current trail and permanent (original/blocking)
    /// clauses are never removed.
    fn reduce_db(&mut self) {
        let mut learnts: Vec<ClauseRef> = (0..self.db.len())
            .map(ClauseRef)
            .filter(|c| self.db[c.0].learnt && !self.db[c.0].deleted)
            .collect();
        if learnts.len() < 2 {
            return;
        }
        learnts.sort_by(|a, b| {
            self.db[a.0]
                .activity
                .partial_cmp(&self.db[b.0].activity)
                .expect("activities are finite")
                .then(a.0.cmp(&b.0))
        });
        let target = learnts.len() / 2;
        let mut dropped = 0;
        for c in learnts {
            if dropped >= target {
                break;
            }
            if self.is_reason(c) {
                continue;
            }
            self.db[c.0].deleted = true;
            dropped += 1;
            self.stats.reduced += 1;
        }
    }

    fn pick_branch_var(&self) -> Var {
        let mut best = None;
        for v in 0..self.num_vars {
            if self.assign[v] == LBool::Undef {
                match best {
                    None => best = Some(v),
                    Some(b) => {
                        if self.activity[v] > self.activity[b] {
                            best = Some(v);
                        }
                    }
                }
            }
        }
        Var(best.expect("decision requested with all variables assigned") as u32)
    }

    /// Enumerate models. For each model, `on_model` receives the full
    /// assignment and returns the blocking clauses to add before the
    /// search resumes from level 0; returning no clauses stops the
    /// enumeration (nothing would prevent the same model recurring).
    /// Blocking clauses become permanent originals, exempt from
    /// reduction. Enumeration ends when the formula becomes
    /// unsatisfiable, a cap is hit, or the callback stops it.
    pub fn enumerate<F>(&mut self, mut on_model: F) -> EnumerationResult
    where
        F: FnMut(&[bool]) -> Vec<Vec<Lit>>,
    {
        let mut models = 0u64;
        self.force_positive = true;
        if !self.ok {
            return EnumerationResult {
                models,
                status: EnumerationStatus::Complete,
            };
        }
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                self.conflicts_since_restart += 1;
                self.conflicts_since_reduce += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return EnumerationResult {
                        models,
                        status: EnumerationStatus::Complete,
                    };
                }
                let (learnt, btl) = self.analyze(confl);
                self.backjump(btl);
                if self.config.record_learnts {
                    self.recorded_learnts.push(learnt.clone());
                }
                self.stats.learnt += 1;
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    self.attach_learnt(learnt);
                }
                self.decay_activities();
                if let Some(cap) = self.config.max_conflicts {
                    if self.stats.conflicts >= cap {
                        return EnumerationResult {
                            models,
                            status: EnumerationStatus::ConflictCapReached,
                        };
                    }
                }
                if self.config.reduce_interval > 0
                    && self.conflicts_since_reduce >= self.config.reduce_interval
                {
                    self.conflicts_since_reduce = 0;
                    self.reduce_db();
                }
            } else if self.config.restarts
                && self.decision_level() > 0
                && self.conflicts_since_restart >= self.restart_limit as u64
            {
                self.conflicts_since_restart = 0;
                self.restart_limit *= self.config.restart_factor;
                self.stats.restarts += 1;
                self.backjump(0);
                self.force_positive = true;
            } else if self.trail.len() == self.num_vars {
                models += 1;
                self.stats.models += 1;
                let model: Vec<bool> = self.assign.iter().map(|&v| v == LBool::True).collect();
                debug_assert!(
                    self.db
                        .iter()
                        .filter(|c| !c.learnt && !c.deleted)
                        .all(|c| c.lits.iter().any(|&l| l.eval(model[l.var().index()]))),
                    "model violates an original clause"
                );
                let blocking = on_model(&model);
                self.backjump(0);
                self.force_positive = true;
                if let Some(cap) = self.config.max_models {
                    if models >= cap {
                        return EnumerationResult {
                            models,
                            status: EnumerationStatus::ModelCapReached,
                        };
                    }
                }
                if blocking.is_empty() {
                    return EnumerationResult {
                        models,
                        status: EnumerationStatus::Complete,
                    };
                }
                for clause in blocking {
                    if !self.add_clause(&clause) {
                        return EnumerationResult {
                            models,
                            status: EnumerationStatus::Complete,
                        };
                    }
                }
            } else {
                let v = self.pick_branch_var();
                let positive = if self.force_positive {
                    self.force_positive = false;
                    true
                } else {
                    self.saved_phase[v.index()]
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(Lit::new(v, positive), None);
            }
        }
    }

    /// Find one model (or unsatisfiability) without blocking anything.
    pub fn solve(&mut self) -> SolveResult {
        let saved_cap = self.config.max_models;
        self.config.max_models = Some(1);
        let mut found: Option<Vec<bool>> = None;
        let res = self.enumerate(|m| {
            found = Some(m.to_vec());
            Vec::new()
        });
        self.config.max_models = saved_cap;
        match found {
            Some(m) => SolveResult::Sat(m),
            None if res.status == EnumerationStatus::ConflictCapReached => {
                SolveResult::ConflictCapReached
            }
            None => SolveResult::Unsat,
        }
    }
}

/// Enumerate models of a plain formula, blocking each full assignment;
/// the callback observes every model. Used by the standalone enumerator
/// and solver tests.
pub fn enumerate_all_models<F>(
    formula: &CnfFormula,
    config: SolverConfig,
    mut on_model: F,
) -> EnumerationResult
where
    F: FnMut(&[bool]),
{
    let mut solver = Solver::from_formula(formula, config);
    solver.enumerate(|model| {
        on_model(model);
        vec![model
            .iter()
            .enumerate()
            .map(|(i, &value)| Lit::new(Var(i as u32), !value))
            .collect()]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: i64) -> Lit {
        Lit::from_dimacs(v)
    }

    fn formula(num_vars: usize, clauses: &[&[i64]]) -> CnfFormula {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            f.add_clause(c.iter().map(|&v| lit(v)).collect());
        }
        f
    }

    fn count_models(f: &CnfFormula, config: SolverConfig) -> u64 {
        enumerate_all_models(f, config, |_| {}).models
    }

    /// Model count by truth table.
    fn truth_table_count(f: &CnfFormula) -> u64 {
        let n = f.num_vars();
        (0..1u64 << n)
            .filter(|bits| {
                let values: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                f.eval(&values)
            })
            .count() as u64
    }

    #[test]
    fn chained_units_propagate() {
        let f = formula(2, &[&[1], &[-1, 2]]);
        let mut s = Solver::from_formula(&f, SolverConfig::default());
        match s.solve() {
            SolveResult::Sat(m) => assert_eq!(m, vec![true, true]),
            other => panic!("expected sat, got {other:?}"),
        }
        assert_eq!(s.stats().decisions, 0);
    }

    #[test]
    fn contradiction_is_unsat_at_level_zero() {
        let f = formula(1, &[&[1], &[-1]]);
        let mut s = Solver::from_formula(&f, SolverConfig::default());
        assert_eq!(s.solve(), SolveResult::Unsat);
    }

    #[test]
    fn exclusion_clause_propagates_opposite() {
        // Attribute-exclusion shape: x1 decided true forces x2 false.
        let f = formula(2, &[&[1], &[-1, -2]]);
        let mut s = Solver::from_formula(&f, SolverConfig::default());
        match s.solve() {
            SolveResult::Sat(m) => assert_eq!(m, vec![true, false]),
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn free_variables_enumerate_fully() {
        let f = formula(2, &[]);
        let mut seen = Vec::new();
        let res = enumerate_all_models(&f, SolverConfig::default(), |m| seen.push(m.to_vec()));
        assert_eq!(res.models, 4);
        assert_eq!(res.status, EnumerationStatus::Complete);
        // Pins the decision policy: first decision positive after start,
        // each restart, and each model backjump; other phases are saved.
        assert_eq!(
            seen,
            vec![
                vec![true, false],
                vec![true, true],
                vec![false, true],
                vec![false, false],
            ]
        );
    }

    #[test]
    fn unsat_formula_enumerates_zero_models() {
        let f = formula(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        let res = enumerate_all_models(&f, SolverConfig::default(), |_| {});
        assert_eq!(res.models, 0);
        assert_eq!(res.status, EnumerationStatus::Complete);
    }

    #[test]
    fn duplicate_and_tautological_input_clauses_are_normalized() {
        let mut s = Solver::new(2, SolverConfig::default());
        assert!(s.add_clause(&[lit(1), lit(1), lit(-1)])); // tautology: no constraint
        assert!(s.add_clause(&[lit(2), lit(2)])); // collapses to unit
        match s.solve() {
            SolveResult::Sat(m) => assert!(m[1]),
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn model_cap_reports_partial_enumeration() {
        let f = formula(3, &[]);
        let config = SolverConfig {
            max_models: Some(2),
            ..SolverConfig::default()
        };
        let res = enumerate_all_models(&f, config, |_| {});
        assert_eq!(res.models, 2);
        assert_eq!(res.status, EnumerationStatus::ModelCapReached);
    }

    #[test]
    fn conflict_cap_reports_partial_enumeration() {
        // First decision (forced positive) on x1 propagates x2 both ways.
        let f = formula(2, &[&[-1, 2], &[-1, -2]]);
        let config = SolverConfig {
            max_conflicts: Some(1),
            ..SolverConfig::default()
        };
        let res = enumerate_all_models(&f, config, |_| {});
        assert_eq!(res.status, EnumerationStatus::ConflictCapReached);
    }

    #[test]
    fn model_counts_match_truth_tables() {
        let cases: Vec<CnfFormula> = vec![
            formula(3, &[&[1, 2], &[-2, 3]]),
            formula(4, &[&[1, 2, 3], &[-1, -2], &[-3, 4], &[2, -4]]),
            formula(5, &[&[1], &[-1, 2, -3], &[3, 4, 5], &[-4, -5]]),
            formula(1, &[&[1], &[-1]]),
        ];
        for f in cases {
            assert_eq!(
                count_models(&f, SolverConfig::default()),
                truth_table_count(&f)
            );
        }
    }

    #[test]
    fn restarts_and_reduction_do_not_change_the_model_set() {
        let f = formula(
            6,
            &[
                &[1, 2, 3],
                &[-1, 4],
                &[-2, 5],
                &[-3, 6],
                &[-4, -5, -6],
                &[2, -6, 1],
            ],
        );
        let expected = truth_table_count(&f);
        let mut base: Vec<Vec<bool>> = Vec::new();
        enumerate_all_models(&f, SolverConfig::default(), |m| base.push(m.to_vec()));
        assert_eq!(base.len() as u64, expected);

        let eager = SolverConfig {
            restarts: true,
            restart_base: 1,
            restart_factor: 1.0,
            reduce_interval: 1,
            ..SolverConfig::default()
        };
        let mut stressed: Vec<Vec<bool>> = Vec::new();
        enumerate_all_models(&f, eager, |m| stressed.push(m.to_vec()));

        let as_set = |v: &[Vec<bool>]| {
            v.iter()
                .cloned()
                .collect::<std::collections::BTreeSet<_>>()
        };
        assert_eq!(as_set(&base), as_set(&stressed));

        let none = SolverConfig {
            restarts: false,
            ..SolverConfig::default()
        };
        let mut plain: Vec<Vec<bool>> = Vec::new();
        enumerate_all_models(&f, none, |m| plain.push(m.to_vec()));
        assert_eq!(as_set(&base), as_set(&plain));
    }

    #[test]
    fn learnt_clauses_preserve_the_model_set() {
        // Learnts are consequences of the clauses present when they were
        // derived, so audit a no-blocking solve against the bare input.
        let cases = vec![
            // First (forced-positive) decision on x1 conflicts immediately.
            formula(4, &[&[-1, 2], &[-1, -2], &[1, 3, 4], &[-3, -4]]),
            // Unsatisfiable: the whole refutation is learnt.
            formula(4, &[&[1, 2], &[1, -2], &[-1, 3], &[-1, -3, 4], &[-1, -4]]),
        ];
        for f in cases {
            let config = SolverConfig {
                record_learnts: true,
                ..SolverConfig::default()
            };
            let mut solver = Solver::from_formula(&f, config);
            let _ = solver.solve();
            assert!(!solver.recorded_learnts().is_empty());
            let base = truth_table_count(&f);
            for learnt in solver.recorded_learnts() {
                let mut extended = f.clone();
                extended.add_clause(learnt.clone());
                assert_eq!(truth_table_count(&extended), base, "clause {learnt:?}");
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic_per_seed() {
        let f = formula(4, &[&[1, 2, 3, 4], &[-1, -2], &[-3, -4]]);
        for seed in [0u64, 7, 42] {
            let config = SolverConfig {
                seed,
                ..SolverConfig::default()
            };
            let mut a: Vec<Vec<bool>> = Vec::new();
            let mut b: Vec<Vec<bool>> = Vec::new();
            enumerate_all_models(&f, config.clone(), |m| a.push(m.to_vec()));
            enumerate_all_models(&f, config, |m| b.push(m.to_vec()));
            assert_eq!(a, b);
            assert_eq!(a.len() as u64, truth_table_count(&f));
        }
    }

    #[test]
    fn empty_callback_stops_enumeration() {
        let f = formula(2, &[]);
        let mut solver = Solver::from_formula(&f, SolverConfig::default());
        let res = solver.enumerate(|_| Vec::new());
        assert_eq!(res.models, 1);
        assert_eq!(res.status, EnumerationStatus::Complete);
    }

    #[test]
    fn blocking_on_a_projection_groups_models() {
        // x3 is free; blocking on (x1, x2) alone yields one model per
        // (x1, x2) combination instead of per full assignment.
        let f = formula(3, &[&[1, 2]]);
        let mut solver = Solver::from_formula(&f, SolverConfig::default());
        let mut projections = Vec::new();
        let res = solver.enumerate(|m| {
            projections.push((m[0], m[1]));
            vec![(0..2)
                .map(|i| Lit::new(Var(i as u32), !m[i]))
                .collect()]
        });
        assert_eq!(res.models, 3);
        let set: std::collections::BTreeSet<_> = projections.into_iter().collect();
        assert_eq!(
            set,
            [(true, false), (true, true), (false, true)].into_iter().collect()
        );
    }
}
