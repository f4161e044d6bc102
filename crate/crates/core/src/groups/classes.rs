use super::elements::Group;
use super::enumerated::EnumeratedGroup;

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    /// Element indices per class; class 0 is the identity.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class of `x^k`, the power map on classes.
    pub fn power_class<G: Group>(&self, grp: &EnumeratedGroup<G>, class: usize, k: u64) -> usize {
        let g = &grp.elements[self.reps[class]];
        self.class_of[grp.index[&grp.group.pow(g, k)]]
    }

    pub fn inverse_class<G: Group>(&self, grp: &EnumeratedGroup<G>, class: usize) -> usize {
        self.class_of[grp.inv_idx(self.reps[class])]
    }
}

/// Orbits under conjugation by the generators; classes are ordered by their
/// smallest element, which puts the identity first.
pub fn conjugacy_classes<G: Group>(grp: &EnumeratedGroup<G>) -> ConjugacyClasses {
    let n = grp.order();
    let mut class_of = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| grp.elements[a].cmp(&grp.elements[b]));
    let gens: Vec<(G::Elem, G::Elem)> = grp
        .generators
        .iter()
        .map(|s| (s.clone(), grp.group.inv(s)))
        .collect();
    for &start in &order {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = raw.len();
        class_of[start] = c;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let x = &grp.elements[members[head]];
            head += 1;
            for (s, si) in &gens {
                let y = grp.group.mul(&grp.group.mul(s, x), si);
                let j = grp.index[&y];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
        }
        members.sort_by(|&a, &b| grp.elements[a].cmp(&grp.elements[b]));
        raw.push(members);
    }
    let reps = raw.iter().map(|m| m[0]).collect();
    ConjugacyClasses {
        classes: raw,
        class_of,
        reps,
    }
}
