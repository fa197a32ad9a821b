//! Sparse storage for the multilinear components of nabla^k R.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactalg::Rational;

/// A vector-valued tensor on basis tuples: entries map (input indices, output
/// index) to a nonzero rational. Keys are nibble-packed, which caps the
/// dimension at 15 and the slot count at 15 — far beyond the catalog's needs.
#[derive(Clone, Debug)]
pub struct SparseTensor {
    dim: usize,
    num_inputs: usize,
    entries: BTreeMap<u64, Rational>,
}

fn pack(inputs: &[usize], out: usize) -> u64 {
    let mut key = out as u64;
    for &i in inputs.iter().rev() {
        key = (key << 4) | i as u64;
    }
    key
}

impl SparseTensor {
    pub fn new(dim: usize, num_inputs: usize) -> Self {
        assert!(dim <= 15 && num_inputs <= 15);
        SparseTensor { dim, num_inputs, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn add(&mut self, inputs: &[usize], out: usize, v: &Rational) {
        debug_assert_eq!(inputs.len(), self.num_inputs);
        if v.is_zero() {
            return;
        }
        let key = pack(inputs, out);
        let slot = self.entries.entry(key).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn get(&self, inputs: &[usize], out: usize) -> Rational {
        debug_assert_eq!(inputs.len(), self.num_inputs);
        self.entries.get(&pack(inputs, out)).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn entries_raw(&self) -> &BTreeMap<u64, Rational> {
        &self.entries
    }

    pub(crate) fn get_raw(&self, key: u64) -> Rational {
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates as (input indices, output index, value).
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, usize, &Rational)> + '_ {
        self.entries.iter().map(move |(&key, v)| {
            let mut k = key;
            let inputs: Vec<usize> = (0..self.num_inputs)
                .map(|_| {
                    let i = (k & 0xf) as usize;
                    k >>= 4;
                    i
                })
                .collect();
            (inputs, (k & 0xf) as usize, v)
        })
    }
}
