use smkdv::hierarchy::*;
use smkdv::*;

fn zc(flow: Flow) -> SuperMatrix {
    let spec = flow_spec(flow).unwrap();
    zero_curvature_residual(&build_ax(), &spec.lax, flow, &spec.eom).unwrap()
}

#[test]
fn spatial_lax_entries() {
    let ax = build_ax();
    assert_eq!(ax.e[0][0], ex("z - phi_1"));
    assert_eq!(ax.e[2][2], ex("2*z"));
    assert_eq!(ax.e[1][2], ex("si*z*psb"));
    let bare = ax.map(|e| e.filter(|m| m.atoms().next().is_none()));
    assert_eq!(bare, e1());
}

#[test]
fn published_entries() {
    assert_eq!(
        build_at(Flow::T3).e[0][0],
        ex("-(phi_3 - 2*phi_1^3 + 3*i*phi_1*psb*psb_1)/4 - i/2*z*psb*psb_1 - z^2*phi_1 + z^3")
    );
    assert_eq!(build_at(Flow::Tm1).e[0][1], ex("-z^-2*exp(2*phi)"));
    assert_eq!(
        build_at(Flow::T5).e[2][2],
        ex("2*z^5 - i*z^3*psb*psb_1 + i*z*(phi_1^2*psb*psb_1 + 1/4*psb_1*psb_2 - 1/4*psb*psb_3)")
    );
    assert!(matches!(parse_flow("t7"), Err(HierarchyError::UnknownFlow(_))));
}

#[test]
fn zero_curvature_holds_for_all_flows() {
    for flow in [Flow::Tm1, Flow::T1, Flow::T3, Flow::T5] {
        assert!(zc(flow).is_zero(), "{flow}");
    }
}

#[test]
fn printed_misprints_break_zero_curvature() {
    for flow in [Flow::Tm1, Flow::T5] {
        let spec = flow_spec(flow).unwrap();
        let r = zero_curvature_residual(&build_ax(), &build_at_printed(flow), flow, &spec.eom).unwrap();
        assert!(!r.is_zero(), "{flow}");
    }
    let mut printed = published_eom(Flow::Tm1).unwrap();
    printed.set_rule(Atom::time_jet(Field::Phi, 1, Flow::Tm1), ex(TM1_PHI_RULE_PRINTED));
    assert!(!zero_curvature_residual(&build_ax(), &build_at(Flow::Tm1), Flow::Tm1, &printed).unwrap().is_zero());
}

#[test]
fn flipped_dispersion_is_detected() {
    let mut eom = published_eom(Flow::T3).unwrap();
    eom.set_rule(Atom::time_jet(Field::Phi, 0, Flow::T3), ex("-phi_3/4 - phi_1^3/2 + 3*i/4*phi_1*psb*psb_1"));
    let r = zero_curvature_residual(&build_ax(), &build_at(Flow::T3), Flow::T3, &eom).unwrap();
    assert!(!r.is_zero());
}

#[test]
fn missing_rule_is_reported() {
    let r = zero_curvature_residual(&build_ax(), &build_at(Flow::T3), Flow::T3, &RewriteSystem::new());
    assert!(matches!(r, Err(HierarchyError::MissingRule(_))));
}

#[test]
fn extracted_equations_match_published() {
    for flow in [Flow::Tm1, Flow::T3, Flow::T5] {
        let got = extract_eom(&build_ax(), &build_at(flow), flow).unwrap();
        let want = published_eom(flow).unwrap();
        let g: Vec<_> = got.rules().map(|(a, e)| (a, e.clone())).collect();
        let w: Vec<_> = want.rules().map(|(a, e)| (a, e.clone())).collect();
        assert_eq!(g, w, "{flow}");
    }
}

#[test]
fn bosonic_limit_is_mkdv() {
    let eom = extract_eom(&build_ax(), &build_at(Flow::T3), Flow::T3).unwrap();
    let phi = eom.replacement(Atom::time_jet(Field::Phi, 0, Flow::T3)).unwrap();
    assert_eq!(phi.bosonic_part(), ex("phi_3/4 - phi_1^3/2"));
}

#[test]
fn solver_reproduces_published_lax() {
    for n in [1, 3, 5] {
        let sol = solve_flow(n).unwrap();
        assert_eq!(sol.lax, build_at(sol.flow), "t{n}");
        let eom = published_eom(sol.flow).unwrap();
        assert_eq!(sol.eom.rules().count(), eom.rules().count());
        for (a, e) in eom.rules() {
            assert_eq!(sol.eom.replacement(a), Some(e));
        }
    }
    assert!(matches!(solve_flow(4), Err(HierarchyError::UnknownFlow(_))));
}

#[test]
fn solver_components_are_homogeneous() {
    let sol = solve_flow(5).unwrap();
    for (g, d) in &sol.components {
        if !d.is_zero() {
            assert_eq!(superalgebra::homogeneous_grade2(d), Some(*g));
        }
    }
}

#[test]
fn equations_are_supersymmetric() {
    for flow in [Flow::T3, Flow::T5] {
        let eom = published_eom(flow).unwrap();
        for (a, r) in susy_residuals(&eom, flow).unwrap() {
            assert!(r.is_zero(), "{a}: {r}");
        }
    }
    let mut broken = published_eom(Flow::T3).unwrap();
    broken.set_rule(Atom::time_jet(Field::Psb, 0, Flow::T3), ex("psb_3/4 - 3/4*phi_1^2*psb_1"));
    assert!(susy_residuals(&broken, Flow::T3).unwrap().iter().any(|(_, r)| !r.is_zero()));
}
