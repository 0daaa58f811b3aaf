use std::collections::HashMap;
use std::sync::Arc;

use super::field::Field;
use super::monomial::TermOrder;
use crate::error::RingError;

/// Ordered, duplicate-free list of variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, RingError> {
        let mut table = VariableTable {
            names: Vec::with_capacity(names.len()),
            index: HashMap::with_capacity(names.len()),
        };
        for n in names {
            table.push(n.as_ref())?;
        }
        Ok(table)
    }

    fn push(&mut self, name: &str) -> Result<(), RingError> {
        if !valid_name(name) {
            return Err(RingError::InvalidName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(RingError::DuplicateVariable(name.to_string()));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// A name starting with `base` that is not yet taken.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.index.contains_key(base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}_{k}"))
            .find(|n| !self.index.contains_key(n))
            .unwrap()
    }
}

/// A polynomial ring: variables, coefficient field and term order.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    vars: VariableTable,
    field: F,
    order: TermOrder,
}

impl<F: Field> Ring<F> {
    pub fn new(vars: VariableTable, field: F, order: TermOrder) -> Arc<Self> {
        Arc::new(Ring { vars, field, order })
    }

    pub fn with_names<S: AsRef<str>>(names: &[S], field: F, order: TermOrder) -> Result<Arc<Self>, RingError> {
        Ok(Self::new(VariableTable::new(names)?, field, order))
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: TermOrder) -> Arc<Self> {
        Ring::new(self.vars.clone(), self.field.clone(), order)
    }

    /// Appends fresh variables (named from `bases`) after the existing ones.
    /// Returns the new ring and the indices of the added variables.
    pub fn append_vars(&self, bases: &[&str], order: TermOrder) -> (Arc<Self>, Vec<usize>) {
        let mut vars = self.vars.clone();
        let mut added = Vec::new();
        for b in bases {
            let name = vars.fresh_name(b);
            added.push(vars.len());
            vars.push(&name).expect("fresh name is valid and unique");
        }
        (Ring::new(vars, self.field.clone(), order), added)
    }

    /// Prepends fresh variables before the existing ones.
    pub fn prepend_vars(&self, bases: &[&str], order: TermOrder) -> Arc<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut probe = self.vars.clone();
        for b in bases {
            let name = probe.fresh_name(b);
            probe.push(&name).expect("fresh name is valid and unique");
            names.push(name);
        }
        names.extend(self.vars.names().iter().cloned());
        let vars = VariableTable::new(&names).expect("names are unique");
        Ring::new(vars, self.field.clone(), order)
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}
