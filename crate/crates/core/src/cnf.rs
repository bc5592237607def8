//! CNF core types and DIMACS i/o shared by the encoder and the solver.

use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// A propositional variable, 0-based internally. DIMACS numbering is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Positive literal of this variable.
    #[inline]
    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    /// Negative literal of this variable.
    #[inline]
    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }

    /// 1-based DIMACS variable number.
    #[inline]
    pub fn dimacs(self) -> i64 {
        self.0 as i64 + 1
    }
}

/// A literal: a variable with a polarity, packed as `var << 1 | negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Index into literal-keyed tables (two slots per variable).
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Signed DIMACS form: `+v` for positive, `-v` for negative.
    pub fn dimacs(self) -> i64 {
        if self.is_positive() {
            self.var().dimacs()
        } else {
            -self.var().dimacs()
        }
    }

    /// Build from a signed DIMACS integer (non-zero).
    pub fn from_dimacs(value: i64) -> Lit {
        debug_assert!(value != 0);
        let var = Var(value.unsigned_abs() as u32 - 1);
        Lit::new(var, value > 0)
    }

    /// Truth value of this literal under an assignment of its variable.
    #[inline]
    pub fn eval(self, var_value: bool) -> bool {
        var_value == self.is_positive()
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dimacs())
    }
}

/// A plain CNF formula: a variable count and a list of clauses.
#[derive(Debug, Clone, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Allocate a fresh variable.
    pub fn new_var(&mut self) -> Var {
        let v = Var(self.num_vars as u32);
        self.num_vars += 1;
        v
    }

    /// Add a clause. Clauses must be non-empty, reference allocated
    /// variables, and contain no duplicate or complementary literals.
    pub fn add_clause(&mut self, lits: Vec<Lit>) {
        debug_assert!(!lits.is_empty(), "empty clause");
        debug_assert!(
            lits.iter().all(|l| l.var().index() < self.num_vars),
            "literal out of range"
        );
        debug_assert!(
            {
                let mut sorted: Vec<u32> = lits.iter().map(|l| l.0).collect();
                sorted.sort_unstable();
                sorted.windows(2).all(|w| w[0] != w[1] && w[0] ^ 1 != w[1])
            },
            "duplicate or complementary literals in clause"
        );
        self.clauses.push(lits);
    }

    /// Evaluate the formula under a full assignment (indexed by variable).
    pub fn eval(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(values[l.var().index()])))
    }

    /// Serialize in DIMACS CNF format, prefixed by the given comment lines
    /// (without the leading `c `).
    pub fn write_dimacs<W: Write>(&self, w: &mut W, comments: &[String]) -> Result<()> {
        for line in comments {
            writeln!(w, "c {line}")?;
        }
        writeln!(w, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(w, "{} ", lit.dimacs())?;
            }
            writeln!(w, "0")?;
        }
        Ok(())
    }

    pub fn to_dimacs_string(&self, comments: &[String]) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf, comments).expect("write to vec");
        String::from_utf8(buf).expect("dimacs is ascii")
    }

    /// Parse DIMACS CNF. Accepts comment lines anywhere, requires the
    /// `p cnf` header before any clause, and zero-terminated clauses that
    /// may span lines.
    pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<CnfFormula> {
        let mut num_vars: Option<usize> = None;
        let mut declared_clauses = 0usize;
        let mut clauses: Vec<Vec<Lit>> = Vec::new();
        let mut current: Vec<Lit> = Vec::new();

        for (lineno, line) in reader.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.map_err(|e| Error::parse(lineno, e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if num_vars.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem line"));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(Error::parse(lineno, "expected 'p cnf <vars> <clauses>'"));
                }
                num_vars = Some(
                    fields[1]
                        .parse()
                        .map_err(|_| Error::parse(lineno, "bad variable count"))?,
                );
                declared_clauses = fields[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad clause count"))?;
                continue;
            }
            let nv = num_vars
                .ok_or_else(|| Error::parse(lineno, "clause before 'p cnf' header"))?;
            for tok in line.split_whitespace() {
                let value: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad literal '{tok}'")))?;
                if value == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else {
                    if value.unsigned_abs() as usize > nv {
                        return Err(Error::parse(
                            lineno,
                            format!("literal {value} out of range (p cnf {nv})"),
                        ));
                    }
                    current.push(Lit::from_dimacs(value));
                }
            }
        }

        let num_vars = num_vars.ok_or_else(|| Error::parse(0, "missing 'p cnf' header"))?;
        if !current.is_empty() {
            return Err(Error::parse(0, "unterminated clause at end of input"));
        }
        if clauses.len() != declared_clauses {
            return Err(Error::parse(
                0,
                format!(
                    "header declares {declared_clauses} clauses, found {}",
                    clauses.len()
                ),
            ));
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
        })
    }
}
