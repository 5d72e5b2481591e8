//! Cross-module property suites on random and shipped complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gear_core::building::{flag_count, Building, DEFAULT_CHAMBER_GUARD};
use gear_core::complex::{f_from_h, h_vector, HVector, SimplicialComplex};
use gear_core::ears;
use gear_core::face_ring;
use gear_core::flags;
use gear_core::generators;
use gear_core::homology;
use gear_core::linalg::{FieldSpec, DEFAULT_PRIME};
use gear_core::macaulay;

fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.gen_range(3..=9u32);
    let facet_count = rng.gen_range(1..=10);
    let facets: Vec<Vec<u32>> = (0..facet_count)
        .map(|_| {
            let size = rng.gen_range(1..=4usize);
            let mut f: Vec<u32> = (0..size).map(|_| rng.gen_range(1..=n)).collect();
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    SimplicialComplex::from_facets(facets).unwrap()
}

fn random_pure_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let dim = rng.gen_range(1..=3usize);
    let n = rng.gen_range(dim as u32 + 2..=9);
    let facet_count = rng.gen_range(1..=10);
    let facets: Vec<Vec<u32>> = (0..facet_count)
        .map(|_| {
            let mut f = std::collections::BTreeSet::new();
            while f.len() < dim + 1 {
                f.insert(rng.gen_range(1..=n));
            }
            f.into_iter().collect()
        })
        .collect();
    SimplicialComplex::from_facets(facets).unwrap()
}

#[test]
fn f_h_round_trip_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100 {
        let c = random_complex(&mut rng);
        let f = c.f_vector().unwrap();
        let h = h_vector(&f);
        assert_eq!(f_from_h(&h, f.d()), f, "complex {:?}", c.facets());
        assert_eq!(h.sum(), *f.0.last().unwrap());
    }
}

#[test]
fn h_sum_counts_facets_of_pure_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..100 {
        let c = random_pure_complex(&mut rng);
        let h = c.h_vector().unwrap();
        assert_eq!(h.sum(), c.facets().len() as i64);
    }
}

#[test]
fn link_deletion_f_identity_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..60 {
        let c = random_complex(&mut rng);
        let vertices = c.vertices();
        let v = vertices[rng.gen_range(0..vertices.len())];
        let f = c.f_vector().unwrap();
        let del = c.deletion(&[v]).f_vector().unwrap();
        let link = c.link(&[v]).unwrap().f_vector().unwrap();
        for j in 0..f.0.len() {
            let a = del.0.get(j).copied().unwrap_or(0);
            let b = if j >= 1 {
                link.0.get(j - 1).copied().unwrap_or(0)
            } else {
                0
            };
            assert_eq!(a + b, f.0[j]);
        }
    }
}

#[test]
fn flag_aggregation_on_balanced_examples() {
    let mut cases: Vec<(SimplicialComplex, flags::Coloring)> = Vec::new();
    for d in 1..=3 {
        let (c, coloring, _) = generators::barycentric_sd_simplex_boundary(d).unwrap();
        cases.push((c, coloring));
    }
    for (n, q) in [(2usize, 2u16), (2, 3), (3, 2), (3, 3)] {
        let b = Building::build(n, q, DEFAULT_CHAMBER_GUARD).unwrap();
        cases.push((b.complex.clone(), b.coloring.clone()));
    }
    for (c, coloring) in cases {
        assert!(flags::check_balanced(&c, &coloring).unwrap());
        let f = flags::flag_f(&c, &coloring).unwrap();
        let h = flags::flag_h(&c, &coloring).unwrap();
        assert_eq!(f.aggregate(), c.f_vector().unwrap().0);
        assert_eq!(h.aggregate(), c.h_vector().unwrap().0);
        assert_eq!(flags::flag_f_from_h(&h), f);
    }
}

#[test]
fn betti_alternating_sum_is_the_reduced_euler_characteristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    for _ in 0..60 {
        let c = random_complex(&mut rng);
        let f = c.f_vector().unwrap();
        let euler: i64 = f
            .0
            .iter()
            .enumerate()
            .map(|(card, &count)| if card % 2 == 0 { -count } else { count })
            .sum();
        for field in [FieldSpec::Q, FieldSpec::Gf(DEFAULT_PRIME)] {
            let betti = homology::reduced_betti(&c, field).unwrap();
            let alternating: i64 = betti
                .betti
                .iter()
                .enumerate()
                .map(|(k, &b)| if k % 2 == 0 { -b } else { b })
                .sum();
            assert_eq!(alternating, euler, "facets {:?}", c.facets());
        }
    }
}

#[test]
fn betti_cross_field_agreement_on_shipped_examples() {
    let examples = vec![
        generators::cross_polytope_boundary(3),
        generators::simplex_boundary(3),
        generators::ps_sphere(&[3, 3]).unwrap(),
        generators::uniform_matroid_complex(2, 4).unwrap(),
        generators::barycentric_sd_simplex_boundary(3).unwrap().0,
        Building::build(3, 2, DEFAULT_CHAMBER_GUARD).unwrap().complex,
    ];
    for c in examples {
        let check = homology::betti_cross_check(&c, DEFAULT_PRIME).unwrap();
        assert!(
            check.agree,
            "characteristic dependence found: {:?} vs {:?}",
            check.over_q.betti, check.over_gf.betti
        );
    }
}

#[test]
fn quotient_hilbert_equals_h_across_lsops_and_fields() {
    let fano = Building::build(3, 2, DEFAULT_CHAMBER_GUARD).unwrap().complex;
    let cases = vec![
        (generators::cross_polytope_boundary(3), vec![1, 3, 3, 1]),
        (generators::simplex_boundary(3), vec![1, 1, 1, 1]),
        (generators::uniform_matroid_complex(2, 4).unwrap(), vec![1, 2, 3]),
        (fano, vec![1, 12, 8]),
    ];
    for (c, h) in &cases {
        let expected: Vec<usize> = h.iter().map(|&x| x as usize).collect();
        for seed in [1u64, 2, 3] {
            let lsop = face_ring::random_lsop(c, FieldSpec::Gf(DEFAULT_PRIME), seed).unwrap();
            assert_eq!(face_ring::quotient_hilbert(c, &lsop).unwrap(), expected);
        }
        let lsop = face_ring::random_lsop(c, FieldSpec::Q, 4).unwrap();
        assert_eq!(face_ring::quotient_hilbert(c, &lsop).unwrap(), expected);
    }
}

#[test]
fn cm_h_vectors_are_m_vectors() {
    let examples = vec![
        generators::cross_polytope_boundary(3),
        generators::simplex_boundary(3),
        generators::ps_sphere(&[3, 3]).unwrap(),
        generators::uniform_matroid_complex(2, 4).unwrap(),
        Building::build(3, 2, DEFAULT_CHAMBER_GUARD).unwrap().complex,
    ];
    for c in examples {
        assert!(homology::is_cm(&c, FieldSpec::Q).unwrap().is_cm);
        let h = c.h_vector().unwrap();
        assert!(macaulay::is_m_vector(&h.0).pass, "h = {:?}", h.0);
    }
}

#[test]
fn certificate_reverifies_from_scratch() {
    let u24 = generators::uniform_matroid_complex(2, 4).unwrap();
    let search = face_ring::find_g_element(&u24, FieldSpec::Gf(DEFAULT_PRIME), 5, 99).unwrap();
    let cert = search.certificate.unwrap();
    assert!(cert.verify(&u24).unwrap());
    assert!(face_ring::certificate_consequences(&cert));
}

#[test]
fn ear_ball_boundary_g_identity_on_building_ears() {
    // h_i(B) − h_{d−i}(B) = g_i(∂B) for every ear produced by a building
    let b = Building::build(3, 3, DEFAULT_CHAMBER_GUARD).unwrap();
    let opposites = b.opposite_chambers(0);
    let dec = b.ear_decomposition(0, &opposites).unwrap();
    let d = b.complex.d().unwrap();
    for ear in dec.ears.iter().skip(1) {
        let ball = homology::is_homology_ball(ear, FieldSpec::Q).unwrap();
        assert!(ball.is_ball);
        let boundary = ball.boundary.unwrap();
        let hb = ear.h_vector().unwrap();
        let hbd = boundary.h_vector().unwrap();
        let entry = |h: &HVector, i: i64| -> i64 {
            if i < 0 {
                0
            } else {
                h.0.get(i as usize).copied().unwrap_or(0)
            }
        };
        for i in 0..=d {
            let lhs = entry(&hb, i) - entry(&hb, d - i);
            let g = entry(&hbd, i) - entry(&hbd, i - 1);
            assert_eq!(lhs, g, "ear {:?} at i = {i}", ear.facets());
        }
    }
}

#[test]
fn a3_building_ears_in_dimension_two() {
    // one full decomposition of the rank-4 building over GF(2): 2-dimensional
    // ears glued along 1-spheres
    let b = Building::build(4, 2, DEFAULT_CHAMBER_GUARD).unwrap();
    assert_eq!(b.chamber_count() as u64, flag_count(4, 2));
    let opposites = b.opposite_chambers(0);
    assert_eq!(opposites.len(), 64); // q^{ℓ(w₀)} = 2^6
    let dec = b.ear_decomposition(0, &opposites).unwrap();
    assert_eq!(dec.ears.len(), 64);
    assert!(dec.report.pass);
    let comph = ears::comph_check(&b.complex, &dec.ears, FieldSpec::Q).unwrap();
    assert!(comph.holds);
    assert!(comph.boundary_g_holds);
    // chari consequences hold numerically on the ambient h-vector
    assert!(macaulay::chari_check(&b.complex.h_vector().unwrap()).pass);
}

#[test]
fn ear_verification_is_order_sensitive() {
    // taking a later ear first breaks condition 2: its boundary is not yet
    // covered
    let b = Building::build(3, 2, DEFAULT_CHAMBER_GUARD).unwrap();
    let opposites = b.opposite_chambers(0);
    let dec = b.ear_decomposition(0, &opposites).unwrap();
    let mut reordered = dec.ears.clone();
    reordered.swap(0, 1);
    let report = ears::verify(&b.complex, &reordered, FieldSpec::Q).unwrap();
    assert!(!report.pass);
    assert!(!report.condition1[0].ok, "a path is not a homology sphere");
}

#[test]
fn flag_h_formula_matches_enumeration_on_shipped_buildings() {
    for (n, q) in [(2usize, 2u16), (2, 3), (3, 2), (3, 3)] {
        let b = Building::build(n, q, DEFAULT_CHAMBER_GUARD).unwrap();
        let direct = b.flag_h_direct().unwrap();
        let formula = gear_core::building::flag_h_formula(n, q as u64).unwrap();
        assert_eq!(direct, formula, "A_{}(q = {q})", n - 1);
        let total: i64 = direct.iter().map(|(_, v)| v).sum();
        assert_eq!(total, b.chamber_count() as i64);
    }
}

#[test]
fn macaulay_expansion_reconstructs_across_the_range() {
    // dense sweep at the low end, seeded samples up to a million
    for i in 1..=6u32 {
        for h in 1..=20_000u64 {
            let e = macaulay::macaulay_expansion(h, i).unwrap();
            let total: u128 = e.iter().map(|&(a, t)| macaulay::binomial(a, t as u64)).sum();
            assert_eq!(total, h as u128);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    for _ in 0..30_000 {
        let h = rng.gen_range(20_001..=1_000_000u64);
        let i = rng.gen_range(1..=6u32);
        let e = macaulay::macaulay_expansion(h, i).unwrap();
        let total: u128 = e.iter().map(|&(a, t)| macaulay::binomial(a, t as u64)).sum();
        assert_eq!(total, h as u128);
        assert!(e.windows(2).all(|w| w[0].0 > w[1].0));
    }
}

#[test]
fn dihedral_dominance_is_exact() {
    for m in [3u32, 4, 5, 6] {
        let g = gear_core::weak_order::Dihedral::new(m).unwrap();
        // the two singleton classes never dominate each other for m ≥ 3:
        // the top of one chain is not above the bottom of the other
        assert!(!g.dominates(0b01, 0b10).dominates);
        assert!(!g.dominates(0b10, 0b01).dominates);
        assert!(g.dominates(0b01, 0b00).dominates);
        assert!(g.dominates(0b10, 0b00).dominates);
        assert!(g.dominates(0b11, 0b00).dominates);
        assert!(!g.dominates(0b00, 0b01).dominates);
    }
}
