use ambiclass_core::arith::{crt, factorize, kronecker, valuation, valuation_int, CongruenceSystem};
use ambiclass_core::bernoulli::{b1_quadratic, mwk_order_check, stickelberger, DirichletCharacter};
use ambiclass_core::filtration::redei_matrix;
use ambiclass_core::genus::{ambiguous_number, genclass_check, genclass_oracle};
use ambiclass_core::module_structure::{
    filtration_orders_from_divisors, pk_ranks, simulate_module, structure_from_divisors,
    structure_nontrivial_norm,
};
use ambiclass_core::normic::{associate_number, hasse_symbol, is_global_norm, symbol_vector};
use ambiclass_core::{
    class_group, compute_filtration, DivisorProfile, Error, FormClassGroup, Place, QuadForm,
    QuadraticField, Sense, SplittingType,
};
use num_rational::BigRational;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn k82() -> QuadraticField {
    QuadraticField::new(82).unwrap()
}

#[test]
fn integer_arithmetic() {
    assert_eq!(kronecker(82, 249), -1);
    assert_eq!(kronecker(82, 105), 1);
    assert_eq!(kronecker(-7, 1), 1);
    let sys = CongruenceSystem::new().with(1, 8).with(3, 41);
    assert_eq!(crt(&sys).unwrap(), 249);
    assert_eq!(crt(&CongruenceSystem::new().with(1, 8).with(23, 41)).unwrap(), 105);
    assert_eq!(crt(&CongruenceSystem::new().with(5, 7)).unwrap(), 5);
    let f = factorize(328).unwrap();
    assert_eq!((f.exponent(2), f.exponent(41)), (3, 1));
    assert!(factorize(1).unwrap().factors.is_empty());
    assert_eq!(factorize(-47).unwrap().exponent(47), 1);
    assert_eq!(valuation_int(8, 2).unwrap(), 3);
    assert_eq!(valuation_int(-5, 5).unwrap(), 1);
    assert_eq!(valuation(&BigRational::new(1.into(), 9.into()), 3).unwrap(), -2);
}

#[test]
fn the_field_of_82() {
    let k = k82();
    assert_eq!(k.discriminant, 328);
    assert_eq!(k.ramified_primes, vec![2, 41]);
    assert_eq!(k.unit_norm, Some(-1));
    assert_eq!(k.fundamental_unit.as_ref().unwrap(), &k.element(9, 1, 1));
    let g = QuadraticField::new(-1).unwrap();
    assert_eq!((g.discriminant, g.torsion_order), (-4, 4));
    assert_eq!(k.splitting_type(3).unwrap(), SplittingType::Split);
    assert_eq!(k.splitting_type(41).unwrap(), SplittingType::Ramified);
    assert_eq!(k.splitting_type(7).unwrap(), SplittingType::Inert);
    let p3 = k.prime_ideal_above(3).unwrap();
    assert_eq!((p3.b, p3.form), (Some(2), QuadForm::new(3, 2, -27)));
    assert_eq!(k.prime_ideal_above(41).unwrap().b, Some(0));
    assert_eq!(k.prime_ideal_above(7), Err(Error::NoDegreeOneIdeal(7)));
    assert_eq!(k.element(65, 7, 3).norm(), q(23));
    assert_eq!(k.element(73, 8, 1).norm(), q(81));
    assert_eq!(k.element(761, 84, 1).norm(), q(529));
    let y = k.solve_norm_equation(&q(23)).unwrap().unwrap();
    assert_eq!(y.norm(), q(23));
    assert!(k.solve_norm_equation(&q(3)).unwrap().is_none());
    for m in [82, -47, 3, 5, -1] {
        let f = QuadraticField::new(m).unwrap();
        assert!(f.solve_norm_equation(&q(9)).unwrap().is_some());
    }
}

#[test]
fn forms_and_class_groups() {
    assert_eq!(QuadForm::new(2, 1, 6).reduce().unwrap(), QuadForm::new(2, 1, 6));
    assert_eq!(QuadForm::new(6, 1, 2).reduce().unwrap(), QuadForm::new(2, -1, 6));
    let g = FormClassGroup::new(-47).unwrap();
    assert_eq!(g.order(), 5);
    let c = g.class_of_form(&QuadForm::new(2, 1, 6)).unwrap();
    assert_eq!(g.pow(c, 5).unwrap(), g.identity());
    assert_eq!(class_group(328, Sense::Narrow).unwrap().descending(), vec![4]);
    assert!(class_group(-4, Sense::Narrow).unwrap().is_trivial());
    assert_eq!(class_group(-47, Sense::Narrow).unwrap().descending(), vec![5]);
    let k = k82();
    let g = FormClassGroup::new(328).unwrap();
    let order = |l: u64| g.element_order(g.class_of_ideal(&k.prime_ideal_above(l).unwrap()).unwrap()).unwrap();
    assert_eq!((order(3), order(23)), (4, 2));
    assert!(order(41) <= 2 && order(2) <= 2);
}

#[test]
fn norm_residue_symbols() {
    let k = k82();
    assert_eq!(associate_number(&q(3), 41, &k, 1).unwrap().unit, 249);
    assert_eq!(associate_number(&q(23), 41, &k, 1).unwrap().unit, 105);
    assert_eq!(associate_number(&q(329), 41, &k, 1).unwrap().value, q(1));
    assert_eq!(hasse_symbol(&q(3), &k, Place::Finite(41)).unwrap(), -1);
    assert_eq!(hasse_symbol(&q(23), &k, Place::Finite(41)).unwrap(), 1);
    assert_eq!(hasse_symbol(&q(3), &k, Place::Finite(5)).unwrap(), 1);
    let v = symbol_vector(&q(3), &k).unwrap();
    assert_eq!((v.get(Place::Finite(2)), v.get(Place::Finite(41))), (-1, -1));
    assert!(symbol_vector(&q(23), &k).unwrap().is_trivial());
    assert!(symbol_vector(&q(1), &QuadraticField::new(-5).unwrap()).unwrap().is_trivial());
    assert!(!is_global_norm(&q(3), &k).unwrap());
    assert!(is_global_norm(&q(23), &k).unwrap());
    assert!(is_global_norm(&q(1), &QuadraticField::new(7).unwrap()).unwrap());
}

#[test]
fn genus_and_filtration() {
    let k = k82();
    assert_eq!(ambiguous_number(&k, Sense::Narrow).unwrap().ambiguous_order, 2);
    let k4 = QuadraticField::new(-1).unwrap();
    assert_eq!(ambiguous_number(&k4, Sense::Narrow).unwrap().ambiguous_order, 1);
    let k84 = QuadraticField::from_discriminant(-84).unwrap();
    assert_eq!(ambiguous_number(&k84, Sense::Narrow).unwrap().ambiguous_order, 4);
    assert!(genclass_check(&k, &[3]).unwrap() && genclass_oracle(&k, &[3]).unwrap());
    assert!(!genclass_check(&k, &[23]).unwrap() && !genclass_oracle(&k, &[23]).unwrap());
    assert!(genclass_check(&QuadraticField::new(-2).unwrap(), &[]).unwrap());
    let r = compute_filtration(&k).unwrap();
    assert_eq!((r.order_sequence, r.length, r.structure.descending()), (vec![2, 2], 2, vec![4]));
    let r = compute_filtration(&k4).unwrap();
    assert!(r.order_sequence.is_empty() && r.structure.is_trivial());
    let r = compute_filtration(&k84).unwrap();
    assert_eq!((r.order_sequence, r.structure.descending()), (vec![4], vec![2, 2]));
    let m = redei_matrix(&k).unwrap();
    assert_eq!((m.rank, m.four_rank), (0, 1));
    let m = redei_matrix(&k84).unwrap();
    assert_eq!((m.rank, m.four_rank), (2, 0));
    assert!(redei_matrix(&QuadraticField::new(-7).unwrap()).unwrap().rows.iter().all(|r| r.iter().all(|&b| b == 0)));
}

#[test]
fn module_structures() {
    let pr = |p, n: &[u32]| DivisorProfile::new(p, n.to_vec()).unwrap();
    assert_eq!(structure_from_divisors(&pr(3, &[3])).unwrap().descending(), vec![9, 3]);
    for k in 1..6 {
        assert_eq!(structure_from_divisors(&pr(2, &[k])).unwrap().descending(), vec![1 << k]);
    }
    assert_eq!(structure_from_divisors(&pr(5, &[7])).unwrap().descending(), vec![25, 25, 25, 5]);
    assert_eq!(pk_ranks(&pr(3, &[3])), vec![2, 1]);
    assert_eq!(pk_ranks(&pr(5, &[7])), vec![4, 3]);
    assert_eq!(filtration_orders_from_divisors(&pr(3, &[1, 2])).unwrap(), vec![9, 3]);
    assert_eq!(filtration_orders_from_divisors(&pr(2, &[1, 1])).unwrap(), vec![4]);
    let groups = |p, n| -> Vec<Vec<u64>> {
        structure_nontrivial_norm(p, n).unwrap().iter().map(|s| s.descending()).collect()
    };
    assert_eq!(groups(5, 3), vec![vec![25, 5]]);
    assert_eq!(groups(3, 3), vec![vec![3, 3, 3], vec![9, 3]]);
    assert_eq!(groups(3, 7), vec![vec![81, 27]]);
    let m = simulate_module(&pr(3, &[2])).unwrap();
    assert_eq!(m.order(), 9);
    assert!(m.sigma_has_order_dividing_p().unwrap());
    assert_eq!(m.brute_filtration().unwrap(), vec![3, 3]);
    assert_eq!(simulate_module(&pr(5, &[1])).unwrap().order(), 5);
    assert_eq!(simulate_module(&pr(3, &[1, 2])).unwrap().brute_filtration().unwrap(), vec![9, 3]);
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(b1_quadratic(-4).unwrap(), BigRational::new((-1).into(), 2.into()));
    assert_eq!(b1_quadratic(-3).unwrap(), BigRational::new((-1).into(), 3.into()));
    assert_eq!(b1_quadratic(-47).unwrap(), q(-5));
    let chi = DirichletCharacter::quadratic(-3).unwrap();
    let st = stickelberger(3, Some(&chi)).unwrap();
    assert_eq!(st.coefficients[&1], BigRational::new((-1).into(), 6.into()));
    assert_eq!(st.coefficients[&2], BigRational::new(1.into(), 6.into()));
    let st = stickelberger(4, None).unwrap();
    assert_eq!(st.coefficients[&1], BigRational::new((-1).into(), 4.into()));
    for (d, p, v) in [(-47i64, 5u64, 1i64), (-23, 3, 1), (-4, 3, 0)] {
        let r = mwk_order_check(d, p).unwrap();
        assert_eq!((r.v_analytic, r.v_oracle, r.pass), (v, v, true));
    }
}
