use std::collections::BTreeSet;

use augresolve::augmentation::{enumerate_augmentations, enumerate_naive, Augmentation};
use augresolve::category::decorated_part;
use augresolve::dga::{differential_from_disks, Dga, Poly, Word};
use augresolve::disk::{DiskEngine, DiskQuery};
use augresolve::gf2::Gf2Matrix;
use augresolve::oracle::{EmbeddedRegions, DEFAULT_FACE_BOUND};
use augresolve::resolution::build_psi;
use augresolve::{BraidSpec, ClosureDiagram, GeneratorId};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = GeneratorId> {
    (0u8..3, 1u32..4, 1u32..4).prop_map(|(k, i, j)| match k {
        0 => GeneratorId::b(i, j),
        1 => GeneratorId::c(i, j),
        _ => GeneratorId::s(i, j),
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..4)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(word(), 0..6).prop_map(Poly::from_words)
}

/// A sub-braid of `torus(p,q)` for small `p`, `q`.
fn braid() -> impl Strategy<Value = BraidSpec> {
    (2u32..4, 1u32..5)
        .prop_flat_map(|(p, q)| {
            let cells = (q * (p - 1)) as usize;
            (Just(p), Just(q), prop::collection::vec(any::<bool>(), cells))
        })
        .prop_map(|(p, q, keep)| {
            let grid: Vec<(u32, u32)> = (1..=q).flat_map(|i| (1..p).map(move |j| (i, j))).collect();
            let deleted = grid.iter().zip(&keep).filter(|(_, k)| !**k).map(|(c, _)| *c);
            BraidSpec::new(p, q, deleted).expect("cells lie in the grid")
        })
}

fn dga_of(spec: &BraidSpec) -> Dga {
    differential_from_disks(&ClosureDiagram::build(spec)).expect("disk search succeeds")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_addition_is_a_group(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert!(x.add(&x).is_zero());
        prop_assert_eq!(x.add(&Poly::zero()), x);
    }

    #[test]
    fn poly_multiplication_is_associative_and_distributive(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        prop_assert_eq!(x.mul(&Poly::one()), x.clone());
        prop_assert!(x.mul(&Poly::zero()).is_zero());
    }

    #[test]
    fn canonical_form_ignores_term_order(words in prop::collection::vec(word(), 0..8)) {
        let forward = Poly::from_words(words.clone());
        let backward = Poly::from_words(words.into_iter().rev());
        prop_assert_eq!(&forward, &backward);
        let again = Poly::from_words(forward.words().cloned());
        prop_assert_eq!(again, forward);
    }

    #[test]
    fn identity_substitution_fixes_everything(x in poly()) {
        prop_assert_eq!(x.substitute(&|_| None), x);
    }

    #[test]
    fn braid_text_round_trips(spec in braid()) {
        let text = spec.to_string();
        prop_assert_eq!(BraidSpec::parse(&text).unwrap(), spec);
    }

    #[test]
    fn generator_names_round_trip(g in letter()) {
        prop_assert_eq!(g.to_string().parse::<GeneratorId>().unwrap(), g);
    }

    #[test]
    fn gf2_rank_is_transpose_invariant(rows in prop::collection::vec(prop::collection::vec(0u8..2, 7), 1..7)) {
        let m = Gf2Matrix::from_rows(&rows);
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert!(r <= m.rows().min(m.cols()));
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + r, m.cols());
        for v in kernel {
            prop_assert!(m.apply(&v).is_empty());
        }
        prop_assert_eq!(m.cokernel_representatives().len() + r, m.rows());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_square_to_zero(spec in braid()) {
        let dga = dga_of(&spec);
        prop_assert!(dga.check_d_squared().is_empty());
        prop_assert!(dga.degree_violations().is_empty());
    }

    #[test]
    fn pruned_enumeration_matches_brute_force(spec in braid()) {
        let dga = dga_of(&spec);
        let pruned = enumerate_augmentations(&dga).unwrap();
        prop_assert_eq!(&pruned, &enumerate_naive(&dga));
        for e in &pruned {
            prop_assert!(e.is_valid(&dga));
        }
    }

    #[test]
    fn walk_and_region_engines_agree(spec in braid()) {
        let diagram = ClosureDiagram::build(&spec);
        let walk = DiskEngine::new(&diagram).unwrap();
        let oracle = EmbeddedRegions::new(&diagram, DEFAULT_FACE_BOUND).unwrap();
        for at in diagram.generators() {
            let q = DiskQuery::OnePositive { at };
            let mut a = walk.enumerate(&q).unwrap();
            let mut b = oracle.query(&q);
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn resolutions_are_multiplicative_chain_maps(spec in braid(), pick in any::<prop::sample::Index>(), words in prop::collection::vec(0usize..64, 0..5)) {
        let retained = spec.retained();
        prop_assume!(!retained.is_empty());
        let (i, j) = retained[pick.index(retained.len())];
        let res = build_psi(&ClosureDiagram::build(&spec), GeneratorId::b(i, j)).unwrap();
        prop_assert!(res.is_surjective());
        let gens = res.plus.generators();
        let u: Word = words.iter().map(|&k| gens[k % gens.len()]).collect();
        let (left, right) = u.split_at(u.len() / 2);
        let whole = res.psi.apply(&Poly::from_word(u.clone()));
        let split = res.psi.apply(&Poly::from_word(left.to_vec())).mul(&res.psi.apply(&Poly::from_word(right.to_vec())));
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn zero_decoration_keeps_only_linear_words(x in poly()) {
        let zero = Augmentation::default();
        let linear: BTreeSet<Word> = x.words().filter(|w| w.len() == 1).cloned().collect();
        let decorated: BTreeSet<Word> = decorated_part(&x, &[&zero, &zero]).into_keys().collect();
        prop_assert_eq!(decorated, linear);
    }
}

#[test]
fn torus_four_three_resolution_is_pinned() {
    // Chain-map-consistent values; only the c entries and b[2,3] match the worked fixture.
    let res = build_psi(&ClosureDiagram::build(&augresolve::torus_braid(4, 3).unwrap()), GeneratorId::b(1, 1)).unwrap();
    let (b, c) = (GeneratorId::b, GeneratorId::c);
    let nonzero: Vec<(GeneratorId, String)> =
        res.psi1.iter().filter(|(_, p)| !p.is_zero()).map(|(g, p)| (*g, p.to_string())).collect();
    let expected = vec![
        (b(2, 1), "b[1,2]".to_string()),
        (b(2, 2), "b[1,3]".to_string()),
        (b(2, 3), "1".to_string()),
        (c(2, 1), "1".to_string()),
        (c(3, 1), "c[3,2]".to_string()),
        (c(4, 1), "c[4,2]".to_string()),
    ];
    assert_eq!(nonzero, expected);
}

#[test]
fn pushed_pairs_are_augmentations() {
    let res = augresolve::fixtures::braid3_resolution().unwrap();
    for e in enumerate_augmentations(&res.minus).unwrap() {
        let pushed = res.push(&e).unwrap();
        assert!(pushed.is_valid(&res.plus));
        // The resolved crossing maps to 1, so every pushed augmentation is 1 there.
        assert!(pushed.value(res.resolved));
        for &g in res.minus.generators() {
            assert_eq!(pushed.value(g), e.eval(res.psi.image(g)));
        }
    }
}
