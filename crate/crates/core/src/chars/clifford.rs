//! Clifford theory for `G_{l'} = D x| E_{l'}` over the abelian normal subgroup `D`.
//!
//! `E_{l'}` acts on `Irr(D) = Irr(D_{t1}) x Irr(D_{t2})` through `F_{1,l'} x F_{2,l'}`,
//! so orbits and stabilizers factorise. For `theta` with stabilizer `H` in `E_{l'}`,
//! `theta` extends to `D x| H` by `(d, h) -> theta(d)` and
//! `Irr(G_{l'} | theta) = { Ind(theta^ psi) : psi in Irr(H) }`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::groups::elements::permute_by;
use crate::groups::{ConstructionParams, EElem, EGroup, EnumeratedGroup, FElem, FGroup, GElem, GGroup, Group};

use super::dixon::character_table;
use super::linear::{d_coords, LinearCharacter};
use super::table::{
    canonical_order, fusion_map, inner_product_int, restrict, CharacterTable, ClassData, ClassFunction,
};

pub const DEFAULT_ORBIT_BOUND: u64 = 1 << 20;

/// Orbits of `Irr(D_t)` under `F_{l'}`, one factor at a time.
#[derive(Clone, Debug)]
pub struct FactorOrbits {
    pub factor: usize,
    /// Smallest dual vector (last coordinate 0) in each orbit.
    pub reps: Vec<Vec<u32>>,
    pub sizes: Vec<usize>,
    /// Stabilizer of the representative, sorted.
    pub stabilizers: Vec<Vec<FElem>>,
}

fn canonical_dual(v: &mut [u32], q: u32) {
    let last = *v.last().unwrap();
    for c in v.iter_mut() {
        *c = (*c + q - last) % q;
    }
}

pub fn factor_orbits(params: &ConstructionParams, factor: usize, bound: u64) -> Result<FactorOrbits> {
    let p = params.p as usize;
    let q = params.level_modulus(factor);
    let size = (q as u128).pow(p as u32 - 1);
    if size > bound as u128 {
        return Err(Error::bound(format!("Irr(D_t{})", factor + 1), size, bound as u128));
    }
    let fg = FGroup::new(params);
    let acting = fg.lprime_elements();
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::with_capacity(size as usize);
    let mut out = FactorOrbits {
        factor,
        reps: Vec::new(),
        sizes: Vec::new(),
        stabilizers: Vec::new(),
    };
    let mut v = vec![0u32; p];
    loop {
        if !seen.contains_key(&v) {
            let mut orbit = Vec::new();
            let mut stab = Vec::new();
            for f in &acting {
                let mut w = permute_by(&fg, f, &v);
                canonical_dual(&mut w, q);
                if w == v {
                    stab.push(*f);
                }
                orbit.push(w);
            }
            orbit.sort();
            orbit.dedup();
            let rep = orbit[0].clone();
            // recompute the stabilizer for the minimal representative
            if rep != v {
                stab.clear();
                for f in &acting {
                    let mut w = permute_by(&fg, f, &rep);
                    canonical_dual(&mut w, q);
                    if w == rep {
                        stab.push(*f);
                    }
                }
            }
            stab.sort();
            out.sizes.push(orbit.len());
            for w in orbit {
                seen.insert(w, ());
            }
            out.reps.push(rep);
            out.stabilizers.push(stab);
        }
        let mut i = 0;
        loop {
            if i == p - 1 {
                let mut idx: Vec<usize> = (0..out.reps.len()).collect();
                idx.sort_by(|&a, &b| out.reps[a].cmp(&out.reps[b]));
                return Ok(FactorOrbits {
                    factor,
                    reps: idx.iter().map(|&i| out.reps[i].clone()).collect(),
                    sizes: idx.iter().map(|&i| out.sizes[i]).collect(),
                    stabilizers: idx.iter().map(|&i| out.stabilizers[i].clone()).collect(),
                });
            }
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// The stabilizer `H = phi^-1(S1 x S2) cap E_{l'}` with its character table and
/// the multiplicities `<psi, xi|_H>` against `Irr(E_{l'})`.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    pub s1: Vec<FElem>,
    pub s2: Vec<FElem>,
    pub table: CharacterTable<EGroup>,
    /// `index_in_e = [E_{l'} : H]`.
    pub index_in_e: u64,
    /// `mult[psi][xi] = <psi, xi|_H>_H`.
    pub mult: Vec<Vec<i64>>,
    /// Index `k` of the central character `phi_k` of each `psi`.
    pub blocks: Vec<u32>,
}

pub fn stabilizer_group(params: &ConstructionParams, s1: &[FElem], s2: &[FElem]) -> Result<EnumeratedGroup<EGroup>> {
    let eg = EGroup::new(params);
    let zs = eg.z_lprime_elements();
    let mut elems = Vec::with_capacity(s1.len() * s2.len() * zs.len());
    for a in s1 {
        for b in s2 {
            for z in &zs {
                elems.push(EElem::new(a.x, b.x, a.m, b.m, z.r));
            }
        }
    }
    let mut gens: Vec<EElem> = s1.iter().map(|a| EElem::new(a.x, 0, a.m, 0, 0)).collect();
    gens.extend(s2.iter().map(|b| EElem::new(0, b.x, 0, b.m, 0)));
    gens.push(eg.z_lprime_generator());
    EnumeratedGroup::from_elements(eg, elems, gens)
}

/// `E_{l'}` with its classes.
pub fn e_lprime_classes(params: &ConstructionParams) -> Result<ClassData<EGroup>> {
    let eg = EGroup::new(params);
    let grp = EnumeratedGroup::from_elements(eg.clone(), eg.lprime_elements(), eg.lprime_generators())?;
    Ok(ClassData::new(grp))
}

pub fn e_lprime_table(params: &ConstructionParams, bound: usize) -> Result<CharacterTable<EGroup>> {
    character_table(Arc::new(e_lprime_classes(params)?), bound)
}

/// Index `k` with `chi(z)/chi(1) = zeta_N^k` on the generator of `Z_{l'}`.
pub fn central_character_index<G: Group>(table: &CharacterTable<G>, chi: &ClassFunction, z: &G::Elem, n: u32) -> Result<u32> {
    let v = table.central_value(chi, z)?;
    (0..n)
        .find(|&k| Cyclo::zeta(n, k as i64) == v)
        .ok_or_else(|| Error::Assertion(format!("central value {v} is not an N-th root of unity")))
}

fn stabilizer_data(
    params: &ConstructionParams,
    s1: &[FElem],
    s2: &[FElem],
    e_table: &CharacterTable<EGroup>,
    bound: usize,
) -> Result<StabilizerData> {
    let h = stabilizer_group(params, s1, s2)?;
    let index_in_e = (e_table.group_order() / h.order()) as u64;
    let table = character_table(Arc::new(ClassData::new(h)), bound)?;
    let fusion = fusion_map(&table.data, &e_table.data, |x| *x)?;
    let sizes = table.data.class_sizes();
    let restricted: Vec<ClassFunction> = e_table.chars.iter().map(|xi| restrict(xi, &fusion)).collect();
    let mult = table
        .chars
        .iter()
        .map(|psi| {
            restricted
                .iter()
                .map(|r| inner_product_int(psi, r, &sizes, table.group_order()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let zgen = EGroup::new(params).z_lprime_generator();
    let n = params.z_lprime_order();
    let blocks = table
        .chars
        .iter()
        .map(|psi| central_character_index(&table, psi, &zgen, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizerData {
        s1: s1.to_vec(),
        s2: s2.to_vec(),
        table,
        index_in_e,
        mult,
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordChar {
    /// Orbit indices in the two factor orbit lists.
    pub orbit: (usize, usize),
    pub stabilizer: usize,
    pub psi: usize,
    pub degree: u64,
    pub block: u32,
}

/// `Irr(G_{l'})` organised by `D`-orbits.
#[derive(Clone, Debug)]
pub struct CliffordDecomposition {
    pub params: ConstructionParams,
    pub orbits: [FactorOrbits; 2],
    pub stabilizers: Vec<StabilizerData>,
    pub e_table: CharacterTable<EGroup>,
    pub chars: Vec<CliffordChar>,
}

impl CliffordDecomposition {
    pub fn build(params: &ConstructionParams, orbit_bound: u64, table_bound: usize) -> Result<Self> {
        let e_table = e_lprime_table(params, table_bound)?;
        Self::build_with(params, e_table, orbit_bound, table_bound)
    }

    pub fn build_with(
        params: &ConstructionParams,
        e_table: CharacterTable<EGroup>,
        orbit_bound: u64,
        table_bound: usize,
    ) -> Result<Self> {
        let o1 = factor_orbits(params, 0, orbit_bound)?;
        let o2 = factor_orbits(params, 1, orbit_bound)?;
        let mut key_index: BTreeMap<(Vec<FElem>, Vec<FElem>), usize> = BTreeMap::new();
        let mut stabilizers = Vec::new();
        let mut chars = Vec::new();
        for i in 0..o1.reps.len() {
            for j in 0..o2.reps.len() {
                let key = (o1.stabilizers[i].clone(), o2.stabilizers[j].clone());
                let s = match key_index.get(&key) {
                    Some(&s) => s,
                    None => {
                        let data = stabilizer_data(params, &key.0, &key.1, &e_table, table_bound)?;
                        stabilizers.push(data);
                        key_index.insert(key, stabilizers.len() - 1);
                        stabilizers.len() - 1
                    }
                };
                let st = &stabilizers[s];
                for (k, psi) in st.table.chars.iter().enumerate() {
                    chars.push(CliffordChar {
                        orbit: (i, j),
                        stabilizer: s,
                        psi: k,
                        degree: st.index_in_e * psi.degree_u64(),
                        block: st.blocks[k],
                    });
                }
            }
        }
        Ok(CliffordDecomposition {
            params: params.clone(),
            orbits: [o1, o2],
            stabilizers,
            e_table,
            chars,
        })
    }

    pub fn theta(&self, c: &CliffordChar) -> Result<LinearCharacter> {
        LinearCharacter::d_char(
            &self.params,
            &self.orbits[0].reps[c.orbit.0],
            &self.orbits[1].reps[c.orbit.1],
        )
    }

    pub fn orbit_size(&self, c: &CliffordChar) -> usize {
        self.orbits[0].sizes[c.orbit.0] * self.orbits[1].sizes[c.orbit.1]
    }

    /// Row of the decomposition matrix: `<chi|_{E_{l'}}, xi> = <psi, xi|_H>`.
    pub fn decomposition_row(&self, c: &CliffordChar) -> &[i64] {
        &self.stabilizers[c.stabilizer].mult[c.psi]
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.chars.iter().map(|c| c.degree as u128 * c.degree as u128).sum()
    }

    /// Characters of `theta` itself (not up to orbit), in the order of `Irr(H)`.
    pub fn irr_over(&self, theta: &LinearCharacter) -> Result<Vec<&CliffordChar>> {
        let (a, b) = theta.d_factors();
        let find = |orb: &FactorOrbits, v: &[u32]| -> Result<usize> {
            let fg = FGroup::new(&self.params);
            let q = self.params.level_modulus(orb.factor);
            let mut images = Vec::new();
            for f in fg.lprime_elements() {
                let mut w = permute_by(&fg, &f, v);
                canonical_dual(&mut w, q);
                images.push(w);
            }
            let rep = images.into_iter().min().unwrap();
            orb.reps
                .binary_search(&rep)
                .map_err(|_| Error::Assertion("orbit representative missing".into()))
        };
        let key = (find(&self.orbits[0], a)?, find(&self.orbits[1], b)?);
        Ok(self.chars.iter().filter(|c| c.orbit == key).collect())
    }
}

/// Values of `Ind_{D x| H}^{G_{l'}}(theta^ psi)` on the classes of `G_{l'}`.
pub fn induced_class_function(
    dec: &CliffordDecomposition,
    c: &CliffordChar,
    g_data: &ClassData<GGroup>,
    order: u32,
) -> Result<ClassFunction> {
    let params = &dec.params;
    let gg = GGroup::new(params);
    let eg = &gg.e;
    let st = &dec.stabilizers[c.stabilizer];
    let hdata = &st.table.data;
    let psi = &st.table.chars[c.psi];
    let theta = dec.theta(c)?;
    // left transversal of H in E_{l'}
    let mut covered = std::collections::HashSet::new();
    let mut transversal = Vec::new();
    for t in eg.lprime_elements() {
        if covered.contains(&t) {
            continue;
        }
        for h in &hdata.group.elements {
            covered.insert(eg.mul(&t, h));
        }
        transversal.push(t);
    }
    if transversal.len() as u64 != st.index_in_e {
        return Err(Error::Assertion("transversal has the wrong size".into()));
    }
    let tinv: Vec<EElem> = transversal.iter().map(|t| eg.inv(t)).collect();
    let values = (0..g_data.num_classes())
        .map(|k| {
            let g: &GElem = g_data.rep(k);
            let mut acc = Cyclo::zero(order);
            for (t, ti) in transversal.iter().zip(&tinv) {
                let conj_h = eg.mul(&eg.mul(ti, &g.e), t);
                let Some(hc) = hdata.class_of(&conj_h) else {
                    continue;
                };
                let d = gg.act_on_d(ti, &g.d);
                let th = theta.value(&d_coords(&d));
                acc = &acc + &(&th * &psi.values[hc]);
            }
            acc
        })
        .collect::<Vec<_>>();
    Ok(ClassFunction::new(order, values))
}

/// All of `Irr(G_{l'})` as class functions, canonically ordered.
pub fn realize_all(dec: &CliffordDecomposition, g_data: &ClassData<GGroup>) -> Result<Vec<ClassFunction>> {
    let order = g_data.exponent as u32;
    let mut out = Vec::new();
    for c in &dec.chars {
        out.push(induced_class_function(dec, c, g_data, order)?);
    }
    canonical_order(&mut out);
    Ok(out)
}

/// `Irr(G_{l'} | theta)` with degrees; values are attached when `g_data` is supplied.
#[derive(Clone, Debug)]
pub struct CliffordDatum {
    pub theta: LinearCharacter,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub constituents: Vec<CliffordChar>,
    pub values: Option<Vec<ClassFunction>>,
}

pub fn irr_g_over_theta(
    dec: &CliffordDecomposition,
    theta: &LinearCharacter,
    g_data: Option<&ClassData<GGroup>>,
) -> Result<CliffordDatum> {
    let cs: Vec<CliffordChar> = dec.irr_over(theta)?.into_iter().cloned().collect();
    let first = cs.first().ok_or_else(|| Error::Assertion("empty Clifford fibre".into()))?;
    let values = match g_data {
        Some(gd) => Some(
            cs.iter()
                .map(|c| induced_class_function(dec, c, gd, gd.exponent as u32))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(CliffordDatum {
        theta: theta.clone(),
        orbit_size: dec.orbit_size(first),
        stabilizer_order: dec.stabilizers[first.stabilizer].table.group_order(),
        constituents: cs,
        values,
    })
}

pub fn g_lprime_classes(params: &ConstructionParams, bound: u64) -> Result<ClassData<GGroup>> {
    let gg = GGroup::new(params);
    let elems = gg.lprime_elements(bound)?;
    let grp = EnumeratedGroup::from_elements(gg.clone(), elems, gg.lprime_generators())?;
    Ok(ClassData::new(grp))
}
