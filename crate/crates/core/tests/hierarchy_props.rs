use minsurf::exprcore::ClosedForm;
use minsurf::hierarchy::{
    determining_residual, generate_ladder, generate_symmetry, homogeneous_basis, recursion_nabla, terminal_residual,
    Branch, ChainSpec, Parity,
};
use minsurf::numcheck::{fd_crosscheck, sample_verify, Claim};

fn all_specs(kmax: u32) -> Vec<ChainSpec> {
    let mut v = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for k in 1..=kmax {
            for branch in [Branch::Re, Branch::Im, Branch::Plus, Branch::Minus] {
                v.push(ChainSpec::new(parity, k, branch));
            }
        }
    }
    v
}

#[test]
fn parity_and_head_of_generated_symmetries() {
    for spec in all_specs(6) {
        let phi = generate_symmetry(spec).unwrap();
        assert!(determining_residual(&phi).is_zero(), "{spec}");
        assert_eq!(phi.parity(), Some(spec.parity), "{spec}");
        assert_eq!(phi.degree(), Some(spec.degree()), "{spec}");
        assert_eq!(phi.coefficient(spec.degree()), homogeneous_basis(spec), "{spec}");
    }
}

#[test]
fn nabla_compatibility_on_all_branches() {
    for spec in all_specs(5) {
        let next = recursion_nabla(&homogeneous_basis(spec), spec.parity, spec.branch).unwrap();
        assert_eq!(next, homogeneous_basis(ChainSpec { k: spec.k + 1, ..spec }), "{spec}");
    }
}

#[test]
fn ladder_ends_in_the_terminal_equation() {
    for spec in all_specs(4) {
        let ladder = generate_ladder(spec).unwrap();
        assert_eq!(ladder.len(), spec.k as usize + 1);
        let f0 = &ladder[spec.k as usize];
        let f1 = &ladder[spec.k as usize - 1];
        assert!(terminal_residual(spec.parity, f0, f1).is_zero(), "{spec}");
    }
}

#[test]
fn generated_coefficients_match_finite_differences() {
    for spec in all_specs(3).into_iter().filter(|s| matches!(s.branch, Branch::Re | Branch::Im)) {
        let phi = generate_symmetry(spec).unwrap();
        for (_, c) in phi.coefficients() {
            for p in [-1.7, 0.2, 2.9] {
                let r = fd_crosscheck(c, p, 1e-4);
                assert!(r.passed, "{spec} at {p}: {r:?}");
            }
        }
    }
}

#[test]
fn higher_levels_solve_the_determining_equation_numerically() {
    for (idx, spec) in all_specs(8).into_iter().filter(|s| s.k > 6).enumerate() {
        let phi = generate_symmetry(spec).unwrap();
        let r = sample_verify(&spec.to_string(), &Claim::DeterminingEquation(&phi), 300, 1e-9, idx as u64);
        assert!(r.passed(), "{r}");
    }
    assert!(fd_crosscheck(&ClosedForm::arctan(), 0.0, 1e-4).passed);
}
