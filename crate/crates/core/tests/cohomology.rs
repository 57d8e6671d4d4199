mod common;

use common::{base, kv, w, BASES};
use gkm_fibrations::cohomology::*;
use gkm_fibrations::fibration::{BaseData, KVector};
use gkm_fibrations::lattice::{Mat2, Weight};
use gkm_fibrations::Error;
use proptest::prelude::*;

fn sign(e: u8) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn at(x: Weight, u: (i128, i128)) -> i128 {
    x.x as i128 * u.0 + x.y as i128 * u.1
}

/// Evaluation grid on which two polynomials of degree at most 2 agree only if equal.
const GRID: [(i128, i128); 9] = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)];

// Oracle for both sides of the Chern identity, evaluated numerically at
// vertex `j` (1-based) and point `u`. Returns (raw c1, raw c2, β c1, β c2).
fn chern_oracle(bd: &BaseData, k: &KVector, a: &[i64], j: usize, u: (i128, i128)) -> [i128; 4] {
    let n = bd.n();
    let eta = k.eta();
    let g = |i: usize| bd.gamma(i as i64);
    let gamma = |i: usize| -> Weight {
        match i {
            0 => sign(bd.eps(0)) * g(n),
            i if i == n + 1 => sign(bd.eps(1)) * g(1),
            i => g(i),
        }
    };
    let kk = |i: usize| -> i64 {
        if i == 0 {
            sign(eta + bd.eps(1)) * k.ks()[n - 1]
        } else {
            k.ks()[i - 1]
        }
    };
    let aa = |i: usize| -> i64 {
        if i == 0 {
            sign(bd.eps(1)) * a[n - 1] + i64::from(eta) * kk(0)
        } else {
            a[i - 1]
        }
    };
    // Fiber weights at v_j.
    let w1 = aa(j) * gamma(j - 1) - aa(j - 1) * gamma(j);
    let w2 = (aa(j) - kk(j)) * gamma(j - 1) + (kk(j - 1) - aa(j - 1)) * gamma(j);
    let (x1, x2) = (at(w1, u), at(w2, u));
    // β_i(v_j): −γ_{i−1} at v_i, γ_{i+1} at v_{i+1}; β_0 = (−1)^{ε_1} β_n.
    let beta = |i: usize| -> i128 {
        let (i, s) = if i == 0 { (n, sign(bd.eps(1)) as i128) } else { (i, 1) };
        let next = if i == n { 1 } else { i + 1 };
        let mut v = 0;
        if j == i {
            v -= at(gamma(i - 1), u);
        }
        if j == next {
            v += at(gamma(i + 1), u);
        }
        s * v
    };
    let mut b1 = 0i128;
    let mut b2 = 0i128;
    for i in 1..=n {
        let (ai, ap, ki, kp) = (aa(i) as i128, aa(i - 1) as i128, kk(i) as i128, kk(i - 1) as i128);
        b1 += (ki - 2 * ai) * beta(i);
        b2 += (2 * ai * ap - ap * ki - ai * kp) * beta(i - 1) * beta(i) + (ai * ai - ai * ki) * beta(i) * beta(i);
    }
    [x1 + x2, x1 * x2, b1, b2]
}

#[test]
fn extended_indices_follow_the_twisting_rules() {
    for name in BASES {
        let bd = base(name);
        let n = bd.n() as i64;
        for k in common::k_grid(bd.n(), 1) {
            assert_eq!(bd.gamma(0), sign(bd.eps(0)) * bd.gamma(n));
            assert_eq!(bd.gamma(n + 1), sign(bd.eps(1)) * bd.gamma(1));
            assert_eq!(bd.k(&k, 0), sign(k.eta() + bd.eps(1)) * bd.k(&k, n));
            assert_eq!(bd.k(&k, n + 1), sign(k.eta() + bd.eps(2)) * bd.k(&k, 1));
        }
    }
}

#[test]
fn beta_classes_on_cp2() {
    let bd = base("cp2");
    let betas = beta_classes(&bd);
    assert_eq!(betas[0].at(1), Poly::linear(-bd.gamma(0)));
    assert_eq!(betas[0].at(2), Poly::linear(bd.gamma(2)));
    assert!(betas[0].at(3).is_zero());
    assert!(betas.iter().all(|b| b.is_equivariant(&bd)));
}

#[test]
fn tolman_first_chern_class_at_v1() {
    let bd = base("cp2");
    let (c1, _) = equivariant_chern_raw(&bd, &kv(&[1, -1, -1], 1), &[0, 0, 0]).unwrap();
    // −γ_3 − γ_1 with γ_1 = (1,0), γ_3 = (−1,1).
    assert_eq!(c1.at(1), Poly::linear(w(0, -1)));
    assert_eq!(c1.at(1), Poly::linear(-bd.gamma(3) - bd.gamma(1)));
}

#[test]
fn chern_in_beta_first_class_and_degenerate_choice() {
    let bd = base("square");
    let k = kv(&[2, -1, 3, 1], 0);
    let c = equivariant_chern_in_beta(&bd, &k, &[0; 4]).unwrap();
    assert_eq!(c.c1, vec![2, -1, 3, 1]);
    // a = k with product gluing: the second fiber weight vanishes everywhere.
    let (_, c2) = equivariant_chern_raw(&bd, &k, k.ks()).unwrap();
    assert!(c2.is_zero());
    assert!(matches!(equivariant_chern_raw(&bd, &k, &[0; 3]), Err(Error::PreconditionUnmet(_))));
}

#[test]
fn chern_identity_against_numeric_oracle() {
    for name in ["cp2", "square", "pentagon"] {
        let bd = base(name);
        let n = bd.n();
        let basis = BetaBasis::new(&bd);
        for k in common::k_grid(n, 2) {
            for a in common::int_vectors(n, 1) {
                let (r1, r2) = equivariant_chern_raw(&bd, &k, &a).unwrap();
                let (e1, e2) = equivariant_chern_in_beta(&bd, &k, &a).unwrap().expand_with(&basis);
                assert_eq!((&r1, &r2), (&e1, &e2), "{name} {k} {a:?}");
                for j in 1..=n {
                    for &u in &GRID {
                        let [x1, x2, b1, b2] = chern_oracle(&bd, &k, &a, j, u);
                        assert_eq!((x1, x2), (r1.at(j as i64).eval(u.0, u.1), r2.at(j as i64).eval(u.0, u.1)));
                        assert_eq!((b1, b2), (x1, x2), "{name} {k} {a:?} vertex {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn chern_identity_on_two_vertex_base() {
    // With two vertices β_{i−1} and β_{i+1} coincide up to sign and the
    // mixed term is counted from both sides. The difference is
    // −s·(m_2 γ_0γ_1 δ_1 + m_1 γ_1γ_2 δ_2), s = (−1)^{ε_1}.
    let bd = base("s4");
    let basis = BetaBasis::new(&bd);
    let s = sign(bd.eps(1));
    let (mut agree, mut total) = (0, 0);
    for k in common::k_grid(2, 2) {
        for a in common::int_vectors(2, 2) {
            let (r1, r2) = equivariant_chern_raw(&bd, &k, &a).unwrap();
            let (e1, e2) = equivariant_chern_in_beta(&bd, &k, &a).unwrap().expand_with(&basis);
            assert_eq!(r1, e1);
            let a0 = a_zero(&bd, &k, &a);
            let m = |i: i64| {
                let (ai, ap) = (if i == 1 { a[0] } else { a[1] }, if i == 1 { a0 } else { a[0] });
                2 * ai * ap - ap * bd.k(&k, i) - ai * bd.k(&k, i - 1)
            };
            let g = |i: i64| Poly::linear(bd.gamma(i));
            let diff = |j: i64| -> Poly {
                if j == 1 {
                    (g(0) * g(1)) * (-s * m(2))
                } else {
                    (g(1) * g(2)) * (-s * m(1))
                }
            };
            for j in 1..=2 {
                assert_eq!(e2.at(j) - r2.at(j), diff(j), "{k} {a:?}");
            }
            total += 1;
            agree += usize::from(e2 == r2);
        }
    }
    assert!(agree < total);
}

#[test]
fn localization_examples() {
    let bd = base("cp2");
    let betas = beta_classes(&bd);
    for i in 0..3 {
        let j = (i + 1) % 3;
        assert_eq!(localize_integral(&bd, &(&betas[i] * &betas[j])).unwrap(), 1);
        assert_eq!(localize_integral(&bd, &(&betas[i] * &betas[i])).unwrap(), 1);
    }
    assert_eq!(localize_integral(&bd, &VertexClass::zero(3)).unwrap(), 0);
    let (_, c2) = base_chern(&bd);
    assert_eq!(localize_integral(&bd, &c2).unwrap(), 3);
    let bad = VertexClass::point(3, 1, Poly::monomial(1, 1, 1));
    assert!(matches!(localize_integral(&bd, &bad), Err(Error::NotEquivariantClass(_))));
    let linear = VertexClass::constant(3, Poly::monomial(1, 0, 1));
    assert!(matches!(localize_integral(&bd, &linear), Err(Error::PreconditionUnmet(_))));
}

#[test]
fn euler_characteristic_of_each_base() {
    for name in ["cp2", "square", "pentagon", "hexagon"] {
        let bd = base(name);
        let (c1, c2) = base_chern(&bd);
        assert!(c1.is_equivariant(&bd) && c2.is_equivariant(&bd));
        assert_eq!(localize_integral(&bd, &c2).unwrap(), bd.n() as i128, "{name}");
        // c_1 of a toric surface is the sum of the invariant divisors.
        let sum = beta_classes(&bd).iter().fold(VertexClass::zero(bd.n()), |acc, b| &acc + b);
        assert_eq!(sum, c1);
        // c_1² + c_2 = 12 (Noether) for these rational surfaces.
        assert_eq!(localize_integral(&bd, &(&c1 * &c1)).unwrap() + bd.n() as i128, 12);
    }
}

#[test]
fn base_rings() {
    let expected = [("cp2", vec![1, 1, 1, 0]), ("square", vec![1, 2, 1, 0]), ("pentagon", vec![1, 3, 1, 0]), ("hexagon", vec![1, 4, 1, 0])];
    for (name, betti) in expected {
        let r = BaseRing::from_base_data(&base(name)).unwrap();
        assert_eq!(r.betti(), betti, "{name}");
        assert!(r.shapes.iter().all(|s| s.torsion.is_empty()));
        assert_eq!(r.linear_relations.len(), 2);
    }
    assert!(BaseRing::from_base_data(&base("s4")).is_err());
}

#[test]
fn projectivization_over_cp2() {
    let bd = base("cp2");
    let r = BaseRing::from_base_data(&bd).unwrap();
    let flag = projectivization_ring(&r, &bd, &kv(&[1, -1, 1], 1)).unwrap();
    let tolman = projectivization_ring(&r, &bd, &kv(&[1, -1, -1], 1)).unwrap();
    assert_eq!(flag.betti(), vec![1, 2, 2, 1]);
    assert_eq!(flag.betti().iter().sum::<usize>(), 2 * bd.n());
    // c_2(E) integrates to η k_n k_1.
    assert_eq!(flag.c2_integral, 1);
    assert_eq!(tolman.c2_integral, -1);
    assert_eq!(r.h2_coordinates(&tolman.c1).unwrap().iter().sum::<i128>().abs(), 1);

    let cf = chern_of_projectivization(&flag, &bd).unwrap();
    let ct = chern_of_projectivization(&tolman, &bd).unwrap();
    assert_eq!(cf.c1.x, 2);
    assert_eq!(r.h2_coordinates(&cf.c1.base).unwrap().iter().map(|x| x.abs()).sum::<i128>(), 4);
    assert_eq!(r.h2_coordinates(&ct.c1.base).unwrap().iter().map(|x| x.abs()).sum::<i128>(), 2);
    assert_eq!((cf.c1_cubed, cf.c1_c2, cf.c3), (48, 24, 6));
    assert_eq!(flag.cubic_invariants().unwrap(), ([0, 1, -1, 0], -3));
    assert_eq!(tolman.cubic_invariants().unwrap(), ([0, 1, 1, 2], 5));
}

#[test]
fn todd_genus_is_one_and_discriminants_match() {
    // Every projectivization here is a rational threefold: ∫ c_1 c_2 = 24.
    for (name, max) in [("cp2", 3), ("square", 2), ("pentagon", 1), ("hexagon", 1)] {
        let bd = base(name);
        let r = BaseRing::from_base_data(&bd).unwrap();
        for k in common::k_grid(bd.n(), max) {
            let p = projectivization_ring(&r, &bd, &k).unwrap();
            let c = chern_of_projectivization(&p, &bd).unwrap();
            assert_eq!(c.c1_c2, 24, "{name} {k}");
            assert_eq!(c.c3, 2 * bd.n() as i128);
            if bd.n() == 3 {
                assert_eq!(p.cubic_invariants().unwrap().1, delta_cp2_fibration(&k).unwrap(), "{k}");
            }
        }
    }
}

#[test]
fn discriminant_examples() {
    assert_eq!(cubic_discriminant(0, 0, 0, 0), 0);
    assert_eq!(cubic_discriminant(1, 0, 0, 1), 1);
    assert_eq!(delta_cp2_fibration(&kv(&[1, -1, 1], 1)).unwrap(), -3);
    assert_eq!(delta_cp2_fibration(&kv(&[1, -1, -1], 1)).unwrap(), 5);
    assert_eq!(delta_cp2_fibration(&kv(&[1, 1, 1], 0)).unwrap(), 9);
    assert!(matches!(delta_cp2_fibration(&kv(&[1, 1, 1, 1], 0)), Err(Error::WrongBase { n: 4 })));
    let values: std::collections::BTreeSet<i128> =
        (1..=10).map(|m| delta_cp2_fibration(&kv(&[m, -1, -1], 1)).unwrap()).collect();
    assert_eq!(values.len(), 10);
}

// Classical discriminant of a x³ + b x²y + c xy² + d y³.
fn classical_discriminant(a: i128, b: i128, c: i128, d: i128) -> i128 {
    b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d
}

// Direct expansion of T(x e1 + y e2)³ in the new basis.
fn transform_oracle(ns: [i128; 4], m: Mat2) -> [i128; 4] {
    let (p, q, r, s) = (m.m[0][0] as i128, m.m[1][0] as i128, m.m[0][1] as i128, m.m[1][1] as i128);
    // f(x, y) = n0 x³ + 3 n1 x²y + 3 n2 xy² + n3 y³, substituted with
    // x → p X + r Y, y → q X + s Y, coefficients read back.
    let f = |x: i128, y: i128| ns[0] * x * x * x + 3 * ns[1] * x * x * y + 3 * ns[2] * x * y * y + ns[3] * y * y * y;
    let g = |xx: i128, yy: i128| f(p * xx + r * yy, q * xx + s * yy);
    // Solve for g's four coefficients from values at (1,0), (0,1), (1,1), (1,−1).
    let (c0, c3) = (g(1, 0), g(0, 1));
    let plus = g(1, 1) - c0 - c3; // 3 m1 + 3 m2
    let minus = g(1, -1) - c0 + c3; // −3 m1 + 3 m2
    let m2 = (plus + minus) / 6;
    let m1 = (plus - minus) / 6;
    [c0, m1, m2, c3]
}

fn unimodular() -> impl Strategy<Value = Mat2> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
        .prop_filter("unimodular", Mat2::is_unimodular)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn discriminant_matches_classical_form(ns in proptest::array::uniform4(-20i128..=20)) {
        let [n0, n1, n2, n3] = ns;
        prop_assert_eq!(-27 * cubic_discriminant(n0, n1, n2, n3), classical_discriminant(n0, 3 * n1, 3 * n2, n3));
    }

    #[test]
    fn discriminant_is_basis_invariant(ns in proptest::array::uniform4(-6i128..=6), m in unimodular()) {
        let t = transform_cubic(ns, m);
        prop_assert_eq!(t, transform_oracle(ns, m));
        prop_assert_eq!(cubic_discriminant(t[0], t[1], t[2], t[3]), cubic_discriminant(ns[0], ns[1], ns[2], ns[3]));
    }

    #[test]
    fn constructed_classes_are_equivariant(
        b in 1usize..5,
        ks in proptest::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 6),
        a in proptest::collection::vec(-3i64..=3, 6),
        eta in 0u8..=1,
    ) {
        let bd = base(BASES[b]);
        let n = bd.n();
        let k = kv(&ks[..n], eta);
        let (c1, c2) = equivariant_chern_raw(&bd, &k, &a[..n]).unwrap();
        prop_assert!(c1.is_equivariant(&bd));
        prop_assert!(c2.is_equivariant(&bd));
        let (e1, e2) = equivariant_chern_in_beta(&bd, &k, &a[..n]).unwrap().expand(&bd);
        prop_assert_eq!((&c1, &c2), (&e1, &e2));
        // Changing a twists E by a line bundle, which leaves ∫ c_1² − 4c_2 alone.
        let disc = |c1: &VertexClass, c2: &VertexClass| {
            localize_integral(&bd, &(c1 * c1)).unwrap() - 4 * localize_integral(&bd, c2).unwrap()
        };
        let (c1_zero, c2_zero) = equivariant_chern_raw(&bd, &k, &vec![0; n]).unwrap();
        prop_assert_eq!(disc(&c1, &c2), disc(&c1_zero, &c2_zero));
    }

    #[test]
    fn products_of_betas_integrate_to_integers(b in 1usize..5, i in 0usize..6, j in 0usize..6) {
        let bd = base(BASES[b]);
        let betas = beta_classes(&bd);
        let (i, j) = (i % bd.n(), j % bd.n());
        let product = &betas[i] * &betas[j];
        prop_assert!(product.is_equivariant(&bd));
        prop_assert!(localize_integral(&bd, &product).is_ok());
    }
}
