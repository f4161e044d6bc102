use std::collections::{HashMap, VecDeque};

use super::elements::Group;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BOUND: usize = 100_000;

/// A finite group listed element by element, with an index lookup.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup<G: Group> {
    pub group: G,
    pub elements: Vec<G::Elem>,
    pub index: HashMap<G::Elem, usize>,
    pub generators: Vec<G::Elem>,
}

impl<G: Group> EnumeratedGroup<G> {
    /// Closure of `gens` under multiplication, breadth first.
    pub fn from_generators(group: G, gens: Vec<G::Elem>, bound: usize) -> Result<Self> {
        let id = group.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let x = group.mul(&elements[i], s);
                if !index.contains_key(&x) {
                    if elements.len() >= bound {
                        return Err(Error::bound("subgroup closure", elements.len() as u128 + 1, bound as u128));
                    }
                    index.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                }
            }
        }
        Ok(Self::finish(group, elements, index, gens))
    }

    /// Takes a list known to be a subgroup; closure is checked on generators.
    pub fn from_elements(group: G, mut elements: Vec<G::Elem>, gens: Vec<G::Elem>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        if !index.contains_key(&group.identity()) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for x in &elements {
            for s in &gens {
                if !index.contains_key(&group.mul(x, s)) {
                    return Err(Error::NotASubgroup(format!("not closed under {s:?}")));
                }
            }
        }
        Ok(Self::finish(group, elements, index, gens))
    }

    fn finish(group: G, elements: Vec<G::Elem>, index: HashMap<G::Elem, usize>, gens: Vec<G::Elem>) -> Self {
        EnumeratedGroup {
            group,
            elements,
            index,
            generators: gens,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn idx(&self, x: &G::Elem) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.index[&self.group.mul(&self.elements[i], &self.elements[j])]
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.index[&self.group.inv(&self.elements[i])]
    }

    /// Drops redundant generators greedily; the result still generates.
    pub fn reduce_generators(&mut self) {
        let mut kept: Vec<G::Elem> = Vec::new();
        let mut span = 1usize;
        for g in self.generators.clone() {
            let mut trial = kept.clone();
            trial.push(g);
            let size = EnumeratedGroup::from_generators(self.group.clone(), trial.clone(), self.order() + 1)
                .map(|e| e.order())
                .unwrap_or(usize::MAX);
            if size > span {
                span = size;
                kept = trial;
            }
            if span == self.order() {
                break;
            }
        }
        self.generators = kept;
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .map(|g| self.group.element_order(g))
            .fold(1u64, num_integer::lcm)
    }
}
