//! The input relation (rows × numeric attributes) and the gradual-item
//! vocabulary built over its attributes.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Direction of variation of one attribute inside a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variation {
    /// Values must not decrease along a chain (rendered `+`).
    Inc,
    /// Values must not increase along a chain (rendered `-`).
    Dec,
}

impl Variation {
    pub fn flip(self) -> Variation {
        match self {
            Variation::Inc => Variation::Dec,
            Variation::Dec => Variation::Inc,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Variation::Inc => '+',
            Variation::Dec => '-',
        }
    }
}

impl fmt::Display for Variation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One attribute paired with a variation direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradualItem {
    pub attribute: usize,
    pub variation: Variation,
}

impl GradualItem {
    pub fn inc(attribute: usize) -> GradualItem {
        GradualItem {
            attribute,
            variation: Variation::Inc,
        }
    }

    pub fn dec(attribute: usize) -> GradualItem {
        GradualItem {
            attribute,
            variation: Variation::Dec,
        }
    }

    /// Same attribute, opposite direction.
    pub fn complement(self) -> GradualItem {
        GradualItem {
            attribute: self.attribute,
            variation: self.variation.flip(),
        }
    }
}

impl fmt::Display for GradualItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.attribute, self.variation)
    }
}

/// A non-empty set of gradual items over pairwise distinct attributes,
/// stored sorted by attribute index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradualPattern {
    items: Vec<GradualItem>,
}

impl GradualPattern {
    /// Build a pattern from items in any order. Rejects empty item lists
    /// and repeated attributes (in particular `a+` together with `a-`).
    pub fn new(mut items: Vec<GradualItem>) -> Result<GradualPattern> {
        if items.is_empty() {
            return Err(Error::Config("pattern must contain at least one item".into()));
        }
        items.sort();
        for w in items.windows(2) {
            if w[0].attribute == w[1].attribute {
                return Err(Error::Config(format!(
                    "attribute {} appears twice in pattern",
                    w[0].attribute
                )));
            }
        }
        Ok(GradualPattern { items })
    }

    pub fn items(&self) -> &[GradualItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-emptiness is a construction invariant
    }

    pub fn attributes(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|it| it.attribute)
    }

    pub fn contains(&self, item: GradualItem) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    /// All variations flipped. An involution: `p.complement().complement() == p`.
    pub fn complement(&self) -> GradualPattern {
        GradualPattern {
            items: self.items.iter().map(|it| it.complement()).collect(),
        }
    }

    /// Whichever of `self` and its complement carries `Inc` on the
    /// lowest attribute index. Exactly one of the two qualifies, so
    /// complementary patterns map to the same canonical form.
    pub fn canonical_form(&self) -> GradualPattern {
        if self.is_canonical() {
            self.clone()
        } else {
            self.complement()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.items[0].variation == Variation::Inc
    }

    /// Render with attribute names, e.g. `(p+, r-)`.
    pub fn display_with(&self, names: &[String]) -> String {
        let inner: Vec<String> = self
            .items
            .iter()
            .map(|it| format!("{}{}", names[it.attribute], it.variation))
            .collect();
        format!("({})", inner.join(", "))
    }
}

impl fmt::Display for GradualPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.items.iter().map(|it| it.to_string()).collect();
        write!(f, "({})", inner.join(", "))
    }
}

/// The mined relation: `n` transactions (rows) over `m` numeric attributes.
/// Immutable after construction; row order is the file order and doubles
/// as the temporal order for temporal mining.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericalDataset<S: Scalar> {
    attribute_names: Vec<String>,
    transaction_ids: Vec<String>,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> NumericalDataset<S> {
    pub fn new(
        attribute_names: Vec<String>,
        transaction_ids: Vec<String>,
        rows: Vec<Vec<S>>,
    ) -> Result<NumericalDataset<S>> {
        if attribute_names.is_empty() {
            return Err(Error::Config("dataset needs at least one attribute".into()));
        }
        if rows.is_empty() {
            return Err(Error::Config("dataset needs at least one transaction".into()));
        }
        if transaction_ids.len() != rows.len() {
            return Err(Error::Config(format!(
                "{} transaction ids for {} rows",
                transaction_ids.len(),
                rows.len()
            )));
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != attribute_names.len() {
                return Err(Error::Config(format!(
                    "row {} has {} values, expected {}",
                    idx,
                    row.len(),
                    attribute_names.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite_value()) {
                return Err(Error::Config(format!("row {idx} has non-finite value {v}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for id in &transaction_ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::Config(format!("duplicate transaction id '{id}'")));
            }
        }
        Ok(NumericalDataset {
            attribute_names,
            transaction_ids,
            rows,
        })
    }

    /// Construct with synthesized ids `t1..tn`.
    pub fn from_rows(attribute_names: Vec<String>, rows: Vec<Vec<S>>) -> Result<NumericalDataset<S>> {
        let ids = (1..=rows.len()).map(|i| format!("t{i}")).collect();
        NumericalDataset::new(attribute_names, ids, rows)
    }

    /// Transaction count n.
    pub fn num_transactions(&self) -> usize {
        self.rows.len()
    }

    /// Attribute count m.
    pub fn num_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    #[inline]
    pub fn value(&self, transaction: usize, attribute: usize) -> S {
        self.rows[transaction][attribute]
    }

    pub fn row(&self, transaction: usize) -> &[S] {
        &self.rows[transaction]
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn transaction_ids(&self) -> &[String] {
        &self.transaction_ids
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_names.iter().position(|a| a == name)
    }

    /// The gradual-item vocabulary: both directions of every attribute,
    /// ordered (0+, 0-, 1+, 1-, …).
    pub fn vocabulary(&self) -> Vec<GradualItem> {
        (0..self.num_attributes())
            .flat_map(|a| [GradualItem::inc(a), GradualItem::dec(a)])
            .collect()
    }

    /// Parse CSV text: one header line of attribute names, then one row
    /// per line. With `has_id_column`, the first field of the header is
    /// the id column's label and the first field of each row the
    /// transaction id; otherwise ids `t1..tn` are synthesized.
    pub fn parse_csv(text: &str, has_id_column: bool) -> Result<NumericalDataset<S>> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input"))?;
        let mut header_fields: Vec<&str> = header.split(',').map(str::trim).collect();
        if has_id_column {
            if header_fields.len() < 2 {
                return Err(Error::parse(1, "id column requested but header has a single field"));
            }
            header_fields.remove(0);
        }
        if header_fields.iter().any(|f| f.is_empty()) {
            return Err(Error::parse(1, "empty attribute name in header"));
        }
        let attribute_names: Vec<String> =
            header_fields.iter().map(|f| f.to_string()).collect();
        let m = attribute_names.len();

        let mut transaction_ids = Vec::new();
        let mut rows: Vec<Vec<S>> = Vec::new();
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let mut fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let id = if has_id_column {
                fields.remove(0).to_string()
            } else {
                format!("t{}", rows.len() + 1)
            };
            if fields.len() != m {
                return Err(Error::parse(
                    lineno,
                    format!("expected {} values, found {}", m, fields.len()),
                ));
            }
            let mut row = Vec::with_capacity(m);
            for field in fields {
                let v: S = field
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("non-numeric value '{field}'")))?;
                if !v.is_finite_value() {
                    return Err(Error::parse(lineno, format!("non-finite value '{field}'")));
                }
                row.push(v);
            }
            if transaction_ids.contains(&id) {
                return Err(Error::parse(lineno, format!("duplicate transaction id '{id}'")));
            }
            transaction_ids.push(id);
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(1, "no transactions"));
        }
        NumericalDataset::new(attribute_names, transaction_ids, rows)
    }

    /// Serialize back to CSV. With `include_ids` the id column is written
    /// first under the label `id`.
    pub fn to_csv(&self, include_ids: bool) -> String {
        let mut out = String::new();
        if include_ids {
            out.push_str("id,");
        }
        out.push_str(&self.attribute_names.join(","));
        out.push('\n');
        for (id, row) in self.transaction_ids.iter().zip(&self.rows) {
            if include_ids {
                out.push_str(id);
                out.push(',');
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}
