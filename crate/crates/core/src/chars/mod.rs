//! Characters: linear characters of the abelian pieces, exact character tables
//! of small groups, and Clifford theory over `D`.

pub mod clifford;
pub mod dixon;
pub mod linear;
pub mod table;

pub use clifford::{
    e_lprime_classes, e_lprime_table, factor_orbits, g_lprime_classes, irr_g_over_theta, realize_all, CliffordChar,
    CliffordDatum, CliffordDecomposition, FactorOrbits, StabilizerData,
};
pub use dixon::{character_table, DEFAULT_TABLE_BOUND};
pub use linear::{
    character_action, fp_stable_characters, irr_abelian, stabilizer_in_p, AbelianKind, Actor, FpStableReport,
    LinearCharacter, StabilizerTag,
};
pub use table::{
    canonical_order, fusion_map, induce, inner_product, inner_product_int, restrict, CharacterTable, ClassData,
    ClassFunction,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::groups::{ConstructionParams, EnumeratedGroup, FGroup};

    fn f_table(p: u32) -> CharacterTable<FGroup> {
        let c = ConstructionParams::machinery(2, p, 1, 1).unwrap();
        let f = FGroup::new(&c);
        let gens = vec![f.from_alpha(1, 1), f.from_alpha(0, c.lambda)];
        let grp = EnumeratedGroup::from_generators(f, gens, 10_000).unwrap();
        character_table(Arc::new(ClassData::new(grp)), DEFAULT_TABLE_BOUND).unwrap()
    }

    #[test]
    fn affine_group_tables() {
        for p in [3, 5, 7] {
            let t = f_table(p);
            t.validate().unwrap();
            let mut degs = t.degrees();
            degs.sort();
            let mut expect = vec![1u64; p as usize - 1];
            expect.push(p as u64 - 1);
            assert_eq!(degs, expect);
            assert!(t.chars[0].values.iter().all(|v| *v == crate::exactnum::Cyclo::one(1)));
        }
    }

    #[test]
    fn cyclic_six() {
        let c = ConstructionParams::machinery(2, 7, 1, 1).unwrap();
        let f = FGroup::new(&c);
        let grp = EnumeratedGroup::from_generators(f.clone(), vec![f.from_alpha(0, 3)], 100).unwrap();
        let t = character_table(Arc::new(ClassData::new(grp)), 100).unwrap();
        assert_eq!(t.chars.len(), 6);
        assert!(t.degrees().iter().all(|&d| d == 1));
        t.validate().unwrap();
    }

    #[test]
    fn induction_and_restriction_in_affine_group() {
        let big = f_table(7);
        let c = ConstructionParams::machinery(2, 7, 1, 1).unwrap();
        let f = FGroup::new(&c);
        let sub = EnumeratedGroup::from_generators(f.clone(), vec![f.from_alpha(0, 3)], 100).unwrap();
        let small = character_table(Arc::new(ClassData::new(sub)), 100).unwrap();
        let fusion = fusion_map(&small.data, &big.data, |x| *x).unwrap();
        for psi in &small.chars {
            let up = induce(
                psi,
                &fusion,
                &small.data.class_sizes(),
                small.group_order(),
                &big.data.class_sizes(),
                big.group_order(),
            )
            .unwrap();
            assert_eq!(up.degree_u64(), 7);
            for chi in &big.chars {
                let down = restrict(chi, &fusion);
                assert_eq!(big.inner(&up, chi), small.inner(psi, &down));
            }
        }
        let triv = restrict(&big.chars[0], &fusion);
        assert_eq!(triv, small.chars[0]);
    }
}
