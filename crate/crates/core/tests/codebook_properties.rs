mod common;

use fulldiv::algebra::ke_subfield_element;
use fulldiv::codebook::{
    diversity_product, enumerate_subfield, generate_codebook, hilbert90_unitary, numeric_det,
    unitary_matrix_numeric,
};
use fulldiv::json::CodebookFile;
use fulldiv::{AlgElem, AlgSpec, CoefficientBox, KElem, SubfieldSpec};
use num_traits::Zero;

fn random_subfield_elem(alg: &AlgSpec, spec: SubfieldSpec, rng: &mut impl rand::Rng) -> AlgElem {
    loop {
        let u = spec.basis(alg).iter().fold(AlgElem::zero(), |acc, b| {
            acc + b.scale_k(&common::k_elem(rng))
        });
        if !u.is_zero() {
            return u;
        }
    }
}

#[test]
fn hilbert90_outputs_are_unitary_with_alpha_inverse() {
    let alg = AlgSpec::default();
    let mut rng = common::rng(11);
    for spec in [SubfieldSpec::KOfE, SubfieldSpec::Nu(1), SubfieldSpec::Nu(4)] {
        for _ in 0..40 {
            let u = random_subfield_elem(&alg, spec, &mut rng);
            let x = hilbert90_unitary(&alg, &u).unwrap();
            assert_eq!(alg.mul(&x, &alg.alpha(&x).unwrap()), AlgElem::from_int(1));
            assert_eq!(alg.alpha(&x).unwrap(), alg.inv(&x).unwrap());
        }
    }
}

#[test]
fn hilbert90_is_invariant_under_fixed_scalars() {
    let alg = AlgSpec::default();
    let mut rng = common::rng(12);
    // ζ9 + ζ9⁻¹ = e - e²(1+ζ3) is α-fixed in K(e)
    let t9 = ke_subfield_element(
        KElem::zero(),
        KElem::from_ints(1, 0),
        KElem::from_ints(-1, -1),
    );
    for _ in 0..40 {
        let u = random_subfield_elem(&alg, SubfieldSpec::KOfE, &mut rng);
        let x = hilbert90_unitary(&alg, &u).unwrap();
        let r = KElem::from_rat(common::nonzero_rat(&mut rng, 10, 5));
        let norm_like = alg.mul(&u, &alg.alpha(&u).unwrap());
        let t = &t9 + &AlgElem::from_int(3);
        for c in [AlgElem::from_k(r), norm_like, t] {
            assert!(alg.is_alpha_fixed(&c).unwrap());
            assert_eq!(hilbert90_unitary(&alg, &alg.mul(&c, &u)).unwrap(), x);
        }
    }
}

#[test]
fn codebook_matches_brute_force_dedupe() {
    let alg = AlgSpec::default();
    let cbox = CoefficientBox::new(1, 1).unwrap();
    let cb = generate_codebook(&alg, SubfieldSpec::KOfE, &cbox, 10).unwrap();
    assert_eq!(cb.elements.len(), 10);
    assert!(cb.elements.contains(&AlgElem::from_int(1)));

    let mut naive: Vec<AlgElem> = Vec::new();
    for u in enumerate_subfield(&alg, SubfieldSpec::KOfE, &cbox) {
        let x = hilbert90_unitary(&alg, &u).unwrap();
        if !naive.contains(&x) {
            naive.push(x);
        }
        if naive.len() == 10 {
            break;
        }
    }
    assert_eq!(naive, cb.elements);
    assert_eq!(
        enumerate_subfield(&alg, SubfieldSpec::KOfE, &cbox).count(),
        728
    );
}

#[test]
fn nu_codebooks_are_fully_diverse() {
    let alg = AlgSpec::default();
    let cbox = CoefficientBox::new(1, 1).unwrap();
    for k in 1..=5 {
        let cb = generate_codebook(&alg, SubfieldSpec::Nu(k), &cbox, 12).unwrap();
        assert_eq!(
            cb.precondition_failures, 0,
            "ν is α-fixed, so Q(ν)(ζ3) is commutative"
        );
        let r = diversity_product(&alg, &cb.elements).unwrap();
        assert!(r.exact_nonzero && r.zeta > 0.0);
    }
}

#[test]
fn diversity_on_difference_closed_sets_is_the_linear_form_minimum() {
    let alg = AlgSpec::default();
    let mut rng = common::rng(13);
    for _ in 0..5 {
        let y = common::alg_elem(&mut rng);
        let z = common::alg_elem(&mut rng);
        let comb = |a: i64, b: i64| {
            y.scale_k(&KElem::from_ints(a, 0)) + z.scale_k(&KElem::from_ints(b, 0))
        };
        let set: Vec<AlgElem> = (-1..=1)
            .flat_map(|a| (-1..=1).map(move |b| (a, b)))
            .map(|(a, b)| comb(a, b))
            .collect();
        let report = diversity_product(&alg, &set).unwrap();
        let min_abs = (-2..=2)
            .flat_map(|a| (-2..=2).map(move |b| (a, b)))
            .filter(|&ab| ab != (0, 0))
            .map(|(a, b)| alg.reduced_norm(&comb(a, b)).embed().norm())
            .fold(f64::INFINITY, f64::min);
        let linear = 0.5 * min_abs.cbrt();
        assert!((report.zeta - linear).abs() <= 1e-12 * linear);
    }
}

#[test]
fn exact_determinants_match_floating_oracle() {
    let alg = AlgSpec::default();
    let mut rng = common::rng(14);
    for _ in 0..200 {
        let x = common::alg_elem(&mut rng);
        let det = alg.reduced_norm(&x);
        let exact = det.embed().norm();
        let numeric = numeric_det(&alg.embed(&x).to_complex(0)).norm();
        assert!(
            (exact - numeric).abs() <= 1e-9 * exact.max(1e-300),
            "{exact} vs {numeric}"
        );
        // reduced norm is the constant term of χ_x up to sign
        assert_eq!(alg.reduced_char_poly(&x).coeff(0), -det);
    }
}

#[test]
fn codebook_file_round_trip_preserves_exact_data() {
    let alg = AlgSpec::default();
    let cbox = CoefficientBox::new(1, 1).unwrap();
    let cb = generate_codebook(&alg, SubfieldSpec::Nu(2), &cbox, 6).unwrap();
    let div = diversity_product(&alg, &cb.elements).unwrap();
    let text = CodebookFile::new(&alg, &cb, Some(&div)).to_json();
    let back = CodebookFile::from_json(&text).unwrap();
    assert_eq!(back.elements, cb.elements);
    assert_eq!(back.subfield().unwrap(), SubfieldSpec::Nu(2));
    let again = diversity_product(&back.gamma.to_spec().unwrap(), &back.elements).unwrap();
    assert_eq!(again, div);
    for (x, m) in back.elements.iter().zip(&back.matrices) {
        let fresh = unitary_matrix_numeric(&alg, x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((fresh[i][j].re - m[i][j][0]).abs() < 1e-14);
                assert!((fresh[i][j].im - m[i][j][1]).abs() < 1e-14);
            }
        }
    }
}
