//! Finite universes, equivalence partitions and concepts.

use std::collections::{BTreeSet, HashMap};
use std::io::Read;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fraction::Fraction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("universe is empty")]
    EmptyUniverse,
    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("no key columns given")]
    NoKeyColumns,
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("element `{0}` appears in more than one block")]
    OverlappingBlocks(String),
    #[error("element `{0}` is not in any block")]
    Uncovered(String),
    #[error("relative cardinality needs a non-empty reference set")]
    EmptyReference,
    #[error("column `{column}` row `{row}`: `{value}` is not a boolean")]
    NotBoolean {
        column: String,
        row: String,
        value: String,
    },
    #[error("malformed table: {0}")]
    Table(String),
}

/// A set of universe elements, stored by index.
pub type ElementSet = BTreeSet<usize>;

/// Ordered, duplicate-free element identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    ids: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(ids: I) -> Result<Self, SpaceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        if ids.is_empty() {
            return Err(SpaceError::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(SpaceError::DuplicateElement(id.clone()));
            }
        }
        Ok(Universe { ids, index })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn position(&self, id: &str) -> Result<usize, SpaceError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| SpaceError::UnknownElement(id.to_string()))
    }

    pub fn all(&self) -> ElementSet {
        (0..self.len()).collect()
    }
}

/// One equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub label: String,
    /// Element indices, ascending.
    pub members: Vec<usize>,
}

/// Equivalence classes of the universe. Blocks are kept in canonical order:
/// members ascending by universe position, blocks by their first member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Block>,
    block_of: Vec<usize>,
}

impl Partition {
    fn new(universe: &Universe, mut blocks: Vec<Block>) -> Result<Self, SpaceError> {
        let mut block_of = vec![usize::MAX; universe.len()];
        for b in blocks.iter_mut() {
            b.members.sort_unstable();
        }
        blocks.sort_by_key(|b| b.members.first().copied().unwrap_or(usize::MAX));
        for (bi, b) in blocks.iter().enumerate() {
            if b.members.is_empty() {
                return Err(SpaceError::EmptyBlock(bi));
            }
            for &m in &b.members {
                if block_of[m] != usize::MAX {
                    return Err(SpaceError::OverlappingBlocks(universe.id(m).to_string()));
                }
                block_of[m] = bi;
            }
        }
        if let Some(m) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(SpaceError::Uncovered(universe.id(m).to_string()));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding element `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }
}

/// The set being approximated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub label: String,
    pub members: ElementSet,
}

impl Concept {
    pub fn from_ids<I, S>(
        space: &ApproximationSpace,
        label: impl Into<String>,
        ids: I,
    ) -> Result<Self, SpaceError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let members = ids
            .into_iter()
            .map(|id| space.universe().position(id.as_ref()))
            .collect::<Result<_, _>>()?;
        Ok(Concept {
            label: label.into(),
            members,
        })
    }

    /// Members are the rows whose `column` holds a true value
    /// (`1`, `true`, `yes`, `y`, `t`; case-insensitive). False values are
    /// `0`, `false`, `no`, `n`, `f` or empty.
    pub fn from_bool_column(
        space: &ApproximationSpace,
        table: &AttributeTable,
        column: &str,
    ) -> Result<Self, SpaceError> {
        let col = table.column_index(column)?;
        let mut members = ElementSet::new();
        for row in &table.rows {
            let raw = row.values[col].trim();
            let truth = match raw.to_ascii_lowercase().as_str() {
                "1" | "true" | "yes" | "y" | "t" => true,
                "0" | "false" | "no" | "n" | "f" | "" => false,
                _ => {
                    return Err(SpaceError::NotBoolean {
                        column: column.to_string(),
                        row: row.id.clone(),
                        value: raw.to_string(),
                    })
                }
            };
            if truth {
                members.insert(space.universe().position(&row.id)?);
            }
        }
        Ok(Concept {
            label: column.to_string(),
            members,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub id: String,
    pub values: Vec<String>,
}

/// Row-per-element attribute table. The first CSV column is the element id;
/// the remaining columns are attributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeTable {
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl AttributeTable {
    pub fn from_csv<R: Read>(reader: R) -> Result<Self, SpaceError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| SpaceError::Table(e.to_string()))?
            .clone();
        if headers.is_empty() {
            return Err(SpaceError::Table("missing header row".into()));
        }
        let columns: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| SpaceError::Table(e.to_string()))?;
            let id = record.get(0).unwrap_or_default().to_string();
            let values = record.iter().skip(1).map(str::to_string).collect();
            rows.push(Row { id, values });
        }
        Ok(AttributeTable { columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Result<usize, SpaceError> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| SpaceError::UnknownColumn(name.to_string()))
    }
}

/// A universe together with an equivalence partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    universe: Universe,
    partition: Partition,
}

impl ApproximationSpace {
    /// Builds a space from explicit blocks; blocks are labelled `B1`, `B2`, …
    /// in canonical order unless labels are supplied with
    /// [`ApproximationSpace::from_labelled_blocks`].
    pub fn from_blocks<S: AsRef<str>>(
        universe: Universe,
        blocks: &[Vec<S>],
    ) -> Result<Self, SpaceError> {
        let labelled: Vec<(Option<String>, &Vec<S>)> = blocks.iter().map(|b| (None, b)).collect();
        Self::build(universe, labelled)
    }

    pub fn from_labelled_blocks<S: AsRef<str>>(
        universe: Universe,
        blocks: &[(impl AsRef<str>, Vec<S>)],
    ) -> Result<Self, SpaceError> {
        let labelled = blocks
            .iter()
            .map(|(l, b)| (Some(l.as_ref().to_string()), b))
            .collect();
        Self::build(universe, labelled)
    }

    fn build<S: AsRef<str>>(
        universe: Universe,
        blocks: Vec<(Option<String>, &Vec<S>)>,
    ) -> Result<Self, SpaceError> {
        let mut out = Vec::with_capacity(blocks.len());
        for (label, ids) in blocks {
            let members = ids
                .iter()
                .map(|id| universe.position(id.as_ref()))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(Block {
                label: label.unwrap_or_default(),
                members,
            });
        }
        let mut partition = Partition::new(&universe, out)?;
        for (i, b) in partition.blocks.iter_mut().enumerate() {
            if b.label.is_empty() {
                b.label = format!("B{}", i + 1);
            }
        }
        Ok(ApproximationSpace {
            universe,
            partition,
        })
    }

    /// Two elements share a block iff their `key_columns` tuples are equal.
    /// Blocks are labelled by their key tuple (values joined with `/`).
    pub fn from_attributes(
        table: &AttributeTable,
        key_columns: &[&str],
    ) -> Result<Self, SpaceError> {
        if table.rows.is_empty() {
            return Err(SpaceError::EmptyUniverse);
        }
        if key_columns.is_empty() {
            return Err(SpaceError::NoKeyColumns);
        }
        let cols = key_columns
            .iter()
            .map(|c| table.column_index(c))
            .collect::<Result<Vec<_>, _>>()?;
        for row in &table.rows {
            if row.values.len() != table.columns.len() {
                return Err(SpaceError::Table(format!(
                    "row `{}` has the wrong number of fields",
                    row.id
                )));
            }
        }
        let universe = Universe::new(table.rows.iter().map(|r| r.id.clone()))?;
        let mut by_key: HashMap<Vec<&str>, usize> = HashMap::new();
        let mut blocks: Vec<Block> = Vec::new();
        for (i, row) in table.rows.iter().enumerate() {
            let key: Vec<&str> = cols.iter().map(|&c| row.values[c].as_str()).collect();
            let bi = *by_key.entry(key.clone()).or_insert_with(|| {
                blocks.push(Block {
                    label: key.join("/"),
                    members: Vec::new(),
                });
                blocks.len() - 1
            });
            blocks[bi].members.push(i);
        }
        let partition = Partition::new(&universe, blocks)?;
        Ok(ApproximationSpace {
            universe,
            partition,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> &[Block] {
        self.partition.blocks()
    }

    pub fn block_of(&self, x: usize) -> &Block {
        &self.partition.blocks[self.partition.block_of(x)]
    }

    /// `|[x] ∩ X| / |[x]|` for the element with id `x`.
    pub fn inclusion_ratio(&self, concept: &Concept, x: &str) -> Result<Fraction, SpaceError> {
        let i = self.universe.position(x)?;
        Ok(self.block_ratio(concept, self.partition.block_of(i)))
    }

    /// Inclusion ratio shared by every element of block `b`.
    pub fn block_ratio(&self, concept: &Concept, b: usize) -> Fraction {
        let members = &self.partition.blocks[b].members;
        let hits = members
            .iter()
            .filter(|m| concept.members.contains(m))
            .count();
        Fraction::new(BigInt::from(hits), BigInt::from(members.len()))
    }

    /// Inclusion ratios of all blocks, in block order.
    pub fn block_ratios(&self, concept: &Concept) -> Vec<Fraction> {
        (0..self.partition.len())
            .map(|b| self.block_ratio(concept, b))
            .collect()
    }

    /// Union of the given blocks.
    pub fn union_of_blocks(&self, blocks: impl IntoIterator<Item = usize>) -> ElementSet {
        blocks
            .into_iter()
            .flat_map(|b| self.partition.blocks[b].members.iter().copied())
            .collect()
    }

    /// Element ids of a set, in universe order.
    pub fn ids_of(&self, set: &ElementSet) -> Vec<String> {
        set.iter()
            .map(|&i| self.universe.id(i).to_string())
            .collect()
    }

    /// Resolves block labels to the union of those blocks.
    pub fn blocks_named(&self, labels: &[&str]) -> Result<ElementSet, SpaceError> {
        let mut out = ElementSet::new();
        for l in labels {
            let b = self
                .blocks()
                .iter()
                .find(|b| b.label == *l)
                .ok_or_else(|| SpaceError::UnknownElement(l.to_string()))?;
            out.extend(b.members.iter().copied());
        }
        Ok(out)
    }
}

/// `|Y ∩ Z| / |Z|`. With `Z = U` this is the normalized relative-cardinality
/// fuzzy measure of `Y`.
pub fn relative_cardinality(y: &ElementSet, z: &ElementSet) -> Result<Fraction, SpaceError> {
    if z.is_empty() {
        return Err(SpaceError::EmptyReference);
    }
    let hits = y.intersection(z).count();
    Ok(Fraction::new(BigInt::from(hits), BigInt::from(z.len())))
}
