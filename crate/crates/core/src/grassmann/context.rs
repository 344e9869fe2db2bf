use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered even and odd variable names of a polynomial ring.
///
/// The order fixes the canonical form of every polynomial built over the
/// context; it never changes after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    even: Vec<String>,
    odd: Vec<String>,
}

/// A variable of a [`Context`], addressed by parity and position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Even(usize),
    Odd(usize),
}

impl Var {
    pub fn is_odd(self) -> bool {
        matches!(self, Var::Odd(_))
    }
}

impl Context {
    pub fn new<S: Into<String>, T: Into<String>>(
        even: impl IntoIterator<Item = S>,
        odd: impl IntoIterator<Item = T>,
    ) -> Result<Arc<Self>> {
        let even: Vec<String> = even.into_iter().map(Into::into).collect();
        let odd: Vec<String> = odd.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for name in even.iter().chain(odd.iter()) {
            if name.is_empty() {
                return Err(Error::InvalidContext("empty variable name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidContext(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(Context { even, odd }))
    }

    /// Context with no variables; its ring is the rationals.
    pub fn empty() -> Arc<Self> {
        Arc::new(Context { even: Vec::new(), odd: Vec::new() })
    }

    pub fn even_names(&self) -> &[String] {
        &self.even
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    pub fn n_even(&self) -> usize {
        self.even.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        if let Some(i) = self.even.iter().position(|n| n == name) {
            return Some(Var::Even(i));
        }
        self.odd.iter().position(|n| n == name).map(Var::Odd)
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.lookup(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, var: Var) -> &str {
        match var {
            Var::Even(i) => &self.even[i],
            Var::Odd(j) => &self.odd[j],
        }
    }

    /// All variables, even ones first, in declaration order.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.even.len()).map(Var::Even).chain((0..self.odd.len()).map(Var::Odd))
    }

    pub fn check_var(&self, var: Var) -> Result<()> {
        match var {
            Var::Even(i) if i >= self.even.len() => {
                Err(Error::UnknownVariable(format!("even variable #{i}")))
            }
            Var::Odd(j) if j >= self.odd.len() => {
                Err(Error::IndexOutOfRange { index: j, len: self.odd.len() })
            }
            _ => Ok(()),
        }
    }

    /// Copy of the context with `suffix` appended to every name.
    pub fn suffixed(&self, suffix: &str) -> Arc<Self> {
        Arc::new(Context {
            even: self.even.iter().map(|n| format!("{n}{suffix}")).collect(),
            odd: self.odd.iter().map(|n| format!("{n}{suffix}")).collect(),
        })
    }

    /// Product context: even variables of every factor in order, then odd.
    pub fn product(factors: &[&Context]) -> Result<Arc<Self>> {
        let even: Vec<String> = factors.iter().flat_map(|c| c.even.iter().cloned()).collect();
        let odd: Vec<String> = factors.iter().flat_map(|c| c.odd.iter().cloned()).collect();
        Context::new(even, odd)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "even=[{}] odd=[{}]", self.even.join(", "), self.odd.join(", "))
    }
}

pub(crate) fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &Arc<Context>, b: &Arc<Context>) -> Result<()> {
    if same_context(a, b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch(format!("[{a}] vs [{b}]")))
    }
}
