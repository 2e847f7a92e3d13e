use modp_satake_core::cohomology::{delta_from_cohomology, InflatedCharacter, KuCohomology};
use modp_satake_core::ffield::{FieldElement, FieldMatrix, FieldSpec};
use modp_satake_core::gl2ind::HeckePoly;
use modp_satake_core::jacquet::{table1, IrreducibleLabel};
use modp_satake_core::padic::{GMatrix, PScalar};
use modp_satake_core::satake::{satake, Degree};
use modp_satake_core::torus::{eventual_image, localization_map, localize_finite, PadicCharacter, TorusCharacter};
use modp_satake_core::weights::Weight;
use proptest::prelude::*;

fn unit(p: u64, u: i64) -> i64 {
    if u % p as i64 == 0 {
        u + 1
    } else {
        u
    }
}

fn diag(p: u64, a: i64, u1: i64, b: i64, u2: i64) -> GMatrix {
    GMatrix::diag(p, PScalar::from_int(p, unit(p, u1)).shift(a), PScalar::from_int(p, unit(p, u2)).shift(b))
}

fn chi(k: &FieldSpec, lambda: u64, e: i64) -> PadicCharacter {
    PadicCharacter::new(k.from_index(1 + lambda % (k.order() - 1)), e).unwrap()
}

/// `z` restricted to the z-stable subspace spanned by the columns of `basis`.
fn restrict(z: &FieldMatrix, basis: &[Vec<FieldElement>]) -> FieldMatrix {
    let k = z.field();
    if basis.is_empty() {
        return FieldMatrix::zeros(k, 0, 0);
    }
    let b = FieldMatrix::from_columns(k, z.rows(), basis);
    let cols: Vec<Vec<FieldElement>> = basis.iter().map(|v| b.solve(&z.mul_vec(v).unwrap()).unwrap().expect("stable")).collect();
    FieldMatrix::from_columns(k, basis.len(), &cols)
}

fn matrix(k: &FieldSpec, n: usize, entries: &[u64]) -> FieldMatrix {
    let rows = (0..n).map(|i| (0..n).map(|j| k.from_index(entries[i * n + j] % k.order())).collect()).collect();
    FieldMatrix::from_rows(k, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hecke_is_multiplicative(
        p in prop::sample::select(vec![3u64, 5]),
        l1 in 0u64..4, l2 in 0u64..4, e1 in 0i64..4, e2 in 0i64..4,
        (a1, b1, a2, b2) in (0i64..3, 0i64..3, 0i64..3, 0i64..3),
        units in prop::array::uniform4(1i64..25),
    ) {
        let k = FieldSpec::prime(p).unwrap();
        let module = InflatedCharacter::new(TorusCharacter::new(chi(&k, l1, e1), chi(&k, l2, e2)));
        let coh = KuCohomology::new(&module).unwrap();
        // positive: val(a) >= val(d)
        let m1 = diag(p, a1.max(b1), units[0], b1, units[1]);
        let m2 = diag(p, a2.max(b2), units[2], b2, units[3]);
        for degree in 0..2 {
            let lhs = coh.hecke(&m1.mul(&m2), degree).unwrap();
            let rhs = coh.hecke(&m1, degree).unwrap().mul(&coh.hecke(&m2, degree).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
        // weights see the torus only through ZK
        let w = Weight::new(&k, (l1 % p) as u32, 1).unwrap();
        let coh = KuCohomology::new(&w).unwrap();
        let (z1, z2) = (diag(p, a1, units[0], a1, units[1]), diag(p, b2, units[2], b2, units[3]));
        for degree in 0..2 {
            let lhs = coh.hecke(&z1.mul(&z2), degree).unwrap();
            let rhs = coh.hecke(&z1, degree).unwrap().mul(&coh.hecke(&z2, degree).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_is_a_character_trivial_on_pro_p(
        p in prop::sample::select(vec![3u64, 5, 7]),
        v in prop::array::uniform4(-2i64..3),
        u in prop::array::uniform4(1i64..50),
    ) {
        let k = FieldSpec::prime(p).unwrap();
        let m1 = diag(p, v[0], u[0], v[1], u[1]);
        let m2 = diag(p, v[2], u[2], v[3], u[3]);
        let d = |m: &GMatrix| delta_from_cohomology(&k, m).unwrap();
        prop_assert_eq!(d(&m1.mul(&m2)), &d(&m1) * &d(&m2));
        let pi = p as i64;
        let pro_p = GMatrix::diag(p, PScalar::from_int(p, 1 + pi * u[0]), PScalar::from_int(p, 1 + pi * u[1]));
        prop_assert!(d(&pro_p).is_one());
    }

    #[test]
    fn localization_is_exact(
        p in prop::sample::select(vec![2u64, 3, 5]),
        entries in prop::collection::vec(0u64..25, 16),
        coeffs in prop::collection::vec(0u64..5, 3),
        nilpotent in any::<bool>(),
    ) {
        let k = FieldSpec::prime(p).unwrap();
        let mut z = matrix(&k, 4, &entries);
        if nilpotent {
            // force a generalized kernel
            for i in 0..4 {
                z[(i, 0)] = k.zero();
            }
        }
        // A = c0 + c1 z + c2 z^2 commutes with z
        let mut a = FieldMatrix::zeros(&k, 4, 4);
        let mut power = FieldMatrix::identity(&k, 4);
        for c in &coeffs {
            a = a.add(&power.scale(&k.from_int(*c as i64))).unwrap();
            power = power.mul(&z).unwrap();
        }
        let loc = localization_map(&z).unwrap();
        let e = eventual_image(&z).unwrap();
        prop_assert_eq!(loc.rank(), localize_finite(&z).unwrap());
        if e.is_empty() {
            return Ok(());
        }
        let a_loc = loc.mul(&a.mul(&FieldMatrix::from_columns(&k, 4, &e)).unwrap()).unwrap();
        let ker = localize_finite(&restrict(&z, &a.kernel())).unwrap();
        let im = localize_finite(&restrict(&z, &a.image())).unwrap();
        prop_assert_eq!(a_loc.rank(), im);
        prop_assert_eq!(a_loc.cols() - a_loc.rank(), ker);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn table_commutes_with_twists(
        p in prop::sample::select(vec![3u64, 5]),
        kind in 0usize..4,
        params in prop::array::uniform4(0u64..4),
        r in 0u32..5,
        psi_params in (0u64..4, 0i64..4),
    ) {
        let k = FieldSpec::prime(p).unwrap();
        let c = chi(&k, params[0], params[1] as i64);
        let label = match kind {
            0 => IrreducibleLabel::Character { chi: c },
            1 => IrreducibleLabel::Special { chi: c },
            2 => {
                let c2 = chi(&k, params[2], params[3] as i64);
                prop_assume!(c != c2);
                IrreducibleLabel::Principal { chi1: c, chi2: c2 }
            }
            _ => IrreducibleLabel::Supersingular { r: r % p as u32, chi: c },
        };
        let psi = chi(&k, psi_params.0, psi_params.1);
        prop_assert_eq!(table1(&label.twist(&psi)).unwrap(), table1(&label).unwrap().twist(&psi).unwrap());
    }

    #[test]
    fn satake_is_multiplicative_on_quadratics(
        p in prop::sample::select(vec![2u64, 3]),
        r in 0u32..3,
        top in any::<bool>(),
        q1 in prop::collection::vec(0i64..3, 3),
        q2 in prop::collection::vec(0i64..3, 3),
    ) {
        let k = FieldSpec::prime(p).unwrap();
        let w = Weight::new(&k, r % p as u32, 0).unwrap();
        let degree = if top { Degree::Top } else { Degree::Zero };
        let poly = |c: &[i64]| HeckePoly::new(&k, c.iter().map(|&x| k.from_int(x)).collect());
        let (a, b) = (poly(&q1), poly(&q2));
        let s = |q: &HeckePoly| satake(degree, q, &w, None).unwrap().laurent;
        prop_assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
    }
}
