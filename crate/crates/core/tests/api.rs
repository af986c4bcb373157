use wittlab::cohomology::{compute_h2_window, decompose_cocycle, make_alpha};
use wittlab::derivations::{compute_der_space, derivation_defect};
use wittlab::{
    bracket, bracket_basis, project, AlgebraKind, BilinearFormWindow, Element, LinearMapWindow,
    Target, Window,
};

#[test]
fn projections_are_homomorphisms() {
    let win = Window::new(5).unwrap();
    for (from, to) in [
        (AlgebraKind::WTilde, AlgebraKind::W22),
        (AlgebraKind::WTilde, AlgebraKind::W),
        (AlgebraKind::W22, AlgebraKind::W),
    ] {
        for &x in &win.symbols(from) {
            for &y in &win.symbols(from) {
                let lhs = project(&bracket_basis(x, y, from), from, to).unwrap();
                let px = project(&x.into(), from, to).unwrap();
                let py = project(&y.into(), from, to).unwrap();
                assert_eq!(
                    lhs,
                    bracket(&px, &py, to).unwrap(),
                    "{from} -> {to} at ({x}, {y})"
                );
            }
        }
    }
}

#[test]
fn text_formats_round_trip() {
    let win = Window::new(4).unwrap();
    let h2 = compute_h2_window(AlgebraKind::W, win, 0).unwrap();
    for form in &h2.basis {
        let back = BilinearFormWindow::parse(&form.to_text()).unwrap();
        assert_eq!(&back, form);
        assert!(decompose_cocycle(&back).unwrap().in_span());
    }
    let der = compute_der_space(AlgebraKind::WTilde, Target::AlgebraValued, 0, win).unwrap();
    for map in &der.outer_basis {
        assert_eq!(&LinearMapWindow::parse(&map.to_text()).unwrap(), map);
    }
    let x = Element::parse("2*L[3] - 1/2*I[-1] + C2", AlgebraKind::WTilde).unwrap();
    assert_eq!(
        Element::parse(&x.to_text(AlgebraKind::WTilde), AlgebraKind::WTilde).unwrap(),
        x
    );
}

#[test]
fn parsed_form_feeds_the_decomposition() {
    let text = make_alpha(Window::new(3).unwrap()).to_text();
    let d = decompose_cocycle(&BilinearFormWindow::parse(&text).unwrap()).unwrap();
    assert_eq!(d.alpha_coeff, wittlab::scalar::int(1));
    assert_eq!(d.beta_coeff, wittlab::scalar::int(0));
}

#[test]
fn derivation_basis_obeys_the_law_on_every_admissible_pair() {
    let win = Window::new(5).unwrap();
    for degree in -2..=2 {
        let r = compute_der_space(AlgebraKind::W, Target::AlgebraValued, degree, win).unwrap();
        assert_eq!(r.outer_dim, r.derivation_dim - r.inner_dim);
        for d in r.derivation_basis.iter().chain(&r.outer_basis) {
            let dom: Vec<_> = d.domain().collect();
            for &x in &dom {
                for &y in &dom {
                    let xy = bracket_basis(x, y, AlgebraKind::W);
                    if xy.symbols().any(|s| d.image(s).is_none()) {
                        continue;
                    }
                    let v =
                        derivation_defect(d, &x.into(), &y.into(), Target::AlgebraValued).unwrap();
                    assert!(v.is_zero(), "degree {degree} at ({x}, {y})");
                }
            }
        }
    }
}
