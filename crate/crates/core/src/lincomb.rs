use std::collections::BTreeMap;

use crate::field::{Field, Scalar};

/// A finite linear combination of basis keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    field: Field,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(field: Field) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: Field, key: K) -> Self {
        let mut out = Self::zero(field);
        out.add_term(key, &field.one());
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, key: K, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.get_mut(&key) {
            Some(c) => {
                let sum = field.add(c, coeff);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &Scalar) {
        for (k, c) in &other.terms {
            let c = self.field.mul(c, scale);
            self.add_term(k.clone(), &c);
        }
    }

    pub fn scaled(&self, scale: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, scale);
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, Scalar> {
        self.terms
    }
}
