use std::sync::OnceLock;

use gelfand_core::chartab::{
    character_table, decompose_induced_trivial, is_gelfand_character, CharacterTable,
};
use gelfand_core::hecke::{
    convolve, convolve_by_constants, double_cosets, is_gelfand_hecke, structure_constants,
    verify_double_cosets, BiInvariantFunction,
};
use gelfand_core::{
    direct_product, make_cyclic, make_dihedral, make_symmetric, subgroup_from_generators,
    wreath_product, FiniteGroup, GroupElementId, Partition,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn base_groups() -> Vec<FiniteGroup> {
    let z2 = make_cyclic(2).unwrap();
    vec![
        make_cyclic(1).unwrap(),
        z2.clone(),
        make_cyclic(3).unwrap(),
        make_symmetric(3).unwrap(),
        make_dihedral(4).unwrap(),
        direct_product(&z2, &z2).unwrap(),
    ]
}

fn ambient_groups() -> &'static [(FiniteGroup, CharacterTable)] {
    static AMBIENT: OnceLock<Vec<(FiniteGroup, CharacterTable)>> = OnceLock::new();
    AMBIENT.get_or_init(|| {
        let s3 = make_symmetric(3).unwrap();
        let groups = vec![
            make_symmetric(4).unwrap(),
            make_dihedral(6).unwrap(),
            wreath_product(&make_cyclic(2).unwrap(), 3)
                .unwrap()
                .into_group(),
            wreath_product(&s3, 2).unwrap().into_group(),
            direct_product(&s3, &make_cyclic(3).unwrap()).unwrap(),
        ];
        groups
            .into_iter()
            .map(|g| {
                let table = character_table(&g).unwrap();
                (g, table)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wreath_law_is_associative(base in 0usize..6, n in 1usize..4, a: u64, b: u64, c: u64) {
        let g = wreath_product(&base_groups()[base], n).unwrap();
        let pick = |x: u64| GroupElementId::new((x % g.order() as u64) as usize);
        let (a, b, c) = (pick(a), pick(b), pick(c));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
    }

    #[test]
    fn wreath_codes_roundtrip(base in 0usize..6, n in 1usize..4, a: u64) {
        let g = wreath_product(&base_groups()[base], n).unwrap();
        let id = GroupElementId::new((a % g.order() as u64) as usize);
        let x = g.decode(id).unwrap();
        prop_assert_eq!(x.base.len(), n);
        prop_assert_eq!(g.encode(&x).unwrap(), id);
    }

    #[test]
    fn partition_text_roundtrip(mut parts in proptest::collection::vec(1usize..9, 0..8)) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let p = Partition::new(parts).unwrap();
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p.clone());
        prop_assert_eq!(p.to_exponential().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn generated_subgroup_pairs_agree(which in 0usize..5, gens in proptest::collection::vec(any::<u64>(), 0..3)) {
        let (g, table) = &ambient_groups()[which];
        let gens: Vec<GroupElementId> = gens
            .iter()
            .map(|&x| GroupElementId::new((x % g.order() as u64) as usize))
            .collect();
        let k = subgroup_from_generators(g, &gens).unwrap();
        prop_assert_eq!(g.order() % k.order(), 0);
        let dc = double_cosets(&k);
        verify_double_cosets(&k, &dc).unwrap();
        let hecke = is_gelfand_hecke(&k).unwrap();
        let decomposition = decompose_induced_trivial(table, &k, Some(hecke.rank)).unwrap();
        prop_assert_eq!(decomposition.rank(), hecke.rank as u64);
        prop_assert_eq!(is_gelfand_character(table, &k).unwrap(), hecke.gelfand);
    }

    #[test]
    fn convolution_is_associative(
        seed in proptest::collection::vec(-1.0f64..1.0, 42),
    ) {
        let s3 = make_symmetric(3).unwrap();
        let k = gelfand_core::embed_wreath_subgroup(&s3, 2).unwrap();
        let dc = double_cosets(&k);
        let c = structure_constants(&k, &dc).unwrap();
        let r = dc.rank();
        let func = |offset: usize| {
            BiInvariantFunction::new(
                (0..r)
                    .map(|i| Complex64::new(seed[offset + 2 * i], seed[offset + 2 * i + 1]))
                    .collect(),
            )
        };
        let (f, g, h) = (func(0), func(2 * r), func(4 * r));
        let left = convolve_by_constants(&convolve_by_constants(&f, &g, &c), &h, &c);
        let right = convolve_by_constants(&f, &convolve_by_constants(&g, &h, &c), &c);
        for (x, y) in left.values.iter().zip(&right.values) {
            prop_assert!((x - y).norm() <= 1e-9 * (1.0 + x.norm().max(y.norm())));
        }
        let direct = convolve(&f, &g, k.parent(), &dc);
        let via = convolve_by_constants(&f, &g, &c);
        for (x, y) in direct.values.iter().zip(&via.values) {
            prop_assert!((x - y).norm() <= 1e-9 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn convolution_paths_agree_exactly_on_integers(
        f in proptest::collection::vec(-50i64..50, 3),
        h in proptest::collection::vec(-50i64..50, 3),
    ) {
        let k = gelfand_core::embed_wreath_subgroup(&make_cyclic(2).unwrap(), 2).unwrap();
        let dc = double_cosets(&k);
        let c = structure_constants(&k, &dc).unwrap();
        let f = BiInvariantFunction::new(f);
        let h = BiInvariantFunction::new(h);
        prop_assert_eq!(convolve(&f, &h, k.parent(), &dc), convolve_by_constants(&f, &h, &c));
        // rank-3 algebra of a Gelfand pair: commutative
        prop_assert_eq!(convolve_by_constants(&f, &h, &c), convolve_by_constants(&h, &f, &c));
    }
}

#[test]
fn s3_s2_convolution_commutes_on_random_inputs() {
    let s3 = make_symmetric(3).unwrap();
    let t = GroupElementId::new(gelfand_core::Permutation::cycle(3, &[1, 2]).unwrap().rank());
    let k = subgroup_from_generators(&s3, &[t]).unwrap();
    let dc = double_cosets(&k);
    let f = BiInvariantFunction::new(vec![Complex64::new(0.3, -1.2), Complex64::new(2.0, 0.7)]);
    let g = BiInvariantFunction::new(vec![Complex64::new(-0.9, 0.1), Complex64::new(0.4, 1.5)]);
    let fg = convolve(&f, &g, &s3, &dc);
    let gf = convolve(&g, &f, &s3, &dc);
    for (x, y) in fg.values.iter().zip(&gf.values) {
        assert!((x - y).norm() < 1e-12);
    }
}
