//! Ambient polynomial rings `F_p[x_0, ..., x_{n-1}]` with a fixed monomial order.

use std::fmt;
use std::sync::Arc;

use crate::error::PolyError;
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;

/// Resource guard for Groebner computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    pub max_basis: usize,
    pub max_degree: u32,
    /// S-pairs reduced in one Groebner computation.
    pub max_pairs: usize,
    /// Terms of a single basis element.
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_basis: 5000,
            max_degree: 2000,
            max_pairs: usize::MAX,
            max_terms: usize::MAX,
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    budget: Budget,
}

/// Shared ring tag. Cloning is cheap; equality is structural.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}] ({})",
            self.0.field.characteristic(),
            self.0.vars.join(","),
            self.0.order.name()
        )
    }
}

impl Ring {
    pub fn new<S: AsRef<str>>(p: u32, vars: &[S], order: MonomialOrder) -> Result<Self, PolyError> {
        let field = PrimeField::new(p)?;
        Ok(Ring(Arc::new(RingData {
            field,
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            order,
            budget: Budget::default(),
        })))
    }

    pub fn field(&self) -> &PrimeField {
        &self.0.field
    }

    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn budget(&self) -> Budget {
        self.0.budget
    }

    fn derive(&self, vars: Vec<String>, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars,
            order,
            budget: self.0.budget,
        }))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        if order == self.order() {
            return self.clone();
        }
        self.derive(self.0.vars.clone(), order)
    }

    pub fn with_budget(&self, budget: Budget) -> Ring {
        Ring(Arc::new(RingData {
            field: self.0.field,
            vars: self.0.vars.clone(),
            order: self.0.order,
            budget,
        }))
    }

    /// Same field and budget, new variable list and order.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S], order: MonomialOrder) -> Ring {
        self.derive(vars.iter().map(|v| v.as_ref().to_string()).collect(), order)
    }

    /// A fresh variable name not clashing with existing ones.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut k = 0usize;
        loop {
            let name = if k == 0 {
                format!("_{stem}")
            } else {
                format!("_{stem}{k}")
            };
            if self.var_index(&name).is_none() {
                return name;
            }
            k += 1;
        }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self, 1)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(self, Monomial::var(self.nvars(), i, 1), 1)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }
}
