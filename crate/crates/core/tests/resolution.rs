use morava::resolution::{
    exactness_diagnostics, galois_commutation_defect, run_check, run_ring_check, ResVariant, ResolutionRing, Status,
};
use morava::{Fgl, WittApprox};

fn ring(v: ResVariant, m: u32, n: u32) -> ResolutionRing {
    ResolutionRing::new(v, Fgl::Honda, m, n).unwrap()
}

#[test]
fn ideal_chain() {
    for (m, n) in [(4, 3), (5, 3)] {
        for v in [ResVariant::Plain, ResVariant::Phi] {
            let r = ring(v, m, n);
            let (it, i, j) = (r.ideal("Itheta").unwrap(), r.ideal("I").unwrap(), r.ideal("J").unwrap());
            assert!(it.is_subset_of(&i).unwrap(), "{v} M={m}");
            assert!(i.is_subset_of(&j).unwrap(), "{v} M={m}");
            assert!(r.ideal("Iphi").unwrap().is_subset_of(&i).unwrap());
            assert!(r.ideal("IK2").unwrap().is_subset_of(&r.ideal("I2K").unwrap()).unwrap());
        }
    }
}

#[test]
fn ideals_are_two_sided() {
    let r = ring(ResVariant::Phi, 4, 3);
    let id = r.ideals().unwrap();
    let q = r.quotient();
    for name in ["J", "I", "Itheta", "Iphi"] {
        let s = r.ideal(name).unwrap();
        let rows: Vec<Vec<u8>> = s.rows().map(|v| v.to_vec()).collect();
        for g in (0..q.len() as u32).step_by(7) {
            for v in &rows {
                assert!(s.contains(&id.left_group(g, v)).unwrap(), "{name}");
                assert!(s.contains(&id.right_group(v, g)).unwrap(), "{name}");
            }
        }
        for v in &rows {
            assert!(s.contains(&id.left_zeta(v)).unwrap() && s.contains(&id.right_zeta(v)).unwrap());
        }
        // delta3 I is inside I
        let d3 = r.d3().unwrap();
        for v in rows.iter().take(40) {
            let x = id.element(v).unwrap();
            assert!(r.ring_contains(&s, &(&d3 * &x)).unwrap());
        }
    }
}

#[test]
fn span_is_idempotent() {
    let r = ring(ResVariant::Plain, 5, 3);
    let s = r.ideal("J").unwrap();
    let again = morava::ideals::Submodule::span("again", s.dim(), s.prec(), s.rows().map(|v| v.to_vec())).unwrap();
    assert!(again.same_span(&s));
    assert_eq!(again.canonical(), s.canonical());
}

#[test]
fn verdicts_are_deterministic() {
    for id in ["C5", "C6", "C9"] {
        let a = run_check(id, Fgl::Honda, 4, 3).unwrap();
        let b = run_check(id, Fgl::Honda, 4, 3).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn monotone_in_depth_and_precision() {
    for id in ["C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"] {
        assert_eq!(run_check(id, Fgl::Honda, 5, 3).unwrap().status, Status::Pass, "{id}");
        for (m, n) in [(5, 2), (4, 3)] {
            assert_eq!(run_check(id, Fgl::Honda, m, n).unwrap().status, Status::Pass, "{id} at M={m} N={n}");
        }
    }
}

#[test]
fn elliptic_gives_the_same_verdicts() {
    for id in ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"] {
        let (m, n) = match id {
            "C1" => (4, 16),
            "C2" => (4, 8),
            _ => (5, 3),
        };
        let h = run_check(id, Fgl::Honda, m, n).unwrap().status;
        let e = run_check(id, Fgl::Elliptic, m, n).unwrap().status;
        assert_eq!(h, e, "{id}");
    }
}

#[test]
fn shallow_depth_is_inconclusive() {
    let r = run_check("C6", Fgl::Honda, 3, 3).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert!(ResolutionRing::new(ResVariant::Plain, Fgl::Honda, 3, 3).unwrap().theta_approx().is_err());
}

#[test]
fn theta_augmentation() {
    // e + alpha + (i + j + k) - (alpha_i + alpha_j + alpha_k) has augmentation 1 + 1 + 3 - 3, and
    // every tr_C3 term is a product of augmentation-zero factors.
    for v in [ResVariant::Plain, ResVariant::Phi] {
        let r = ring(v, 5, 6);
        assert_eq!(r.theta_approx().unwrap().augment(), WittApprox::from_int(2, 6));
        assert_eq!(r.delta2_approx().unwrap().augment(), WittApprox::from_int(2, 6));
    }
}

#[test]
fn phi_versions_are_sigma_invariant() {
    let r = ring(ResVariant::Phi, 5, 4);
    for x in [r.theta_approx().unwrap(), r.delta2_approx().unwrap(), r.d1().unwrap(), r.d3().unwrap()] {
        assert_eq!(x.sigma().unwrap(), x);
    }
}

#[test]
fn commutator_identity() {
    let r = ring(ResVariant::Plain, 5, 4);
    let e = r.e();
    let a = r.g("alpha").unwrap();
    for t in ["i", "j", "k"] {
        let tau = r.g(t).unwrap();
        let at = r.g(&format!("alpha_{t}")).unwrap();
        let lhs = (&tau - &at) * (&e - &a);
        let rhs = (&e - &(&at * &a)) * (&tau - &e) + (&e - &at);
        assert_eq!(lhs, rhs, "{t}");
    }
}

#[test]
fn each_ring_check_passes_per_variant() {
    for v in [ResVariant::Plain, ResVariant::Phi] {
        let r = ring(v, 5, 4);
        for id in ["C4", "C5", "C6", "C7", "C9", "C10"] {
            assert_eq!(run_ring_check(id, &r).unwrap(), None, "{id} {v}");
        }
    }
}

/// tau tr_sigma(theta) - tr_sigma(theta) tau for tau in PG12. Frozen observation: always in I;
/// in Itheta + Iphi for the C6 part under both laws and for the Galois coset under the elliptic
/// law only.
#[test]
fn galois_commutation_of_tr_sigma_theta() {
    for (fgl, galois_fine) in [(Fgl::Honda, false), (Fgl::Elliptic, true)] {
        let r = ResolutionRing::new(ResVariant::Phi, fgl, 5, 4).unwrap();
        let d = galois_commutation_defect(&r).unwrap();
        assert_eq!(d.len(), 6);
        for (form, fine, in_i) in d {
            assert!(in_i, "{form}");
            let galois = form.ends_with("*s");
            assert_eq!(fine, !galois || galois_fine, "{fgl} {form}");
        }
    }
}

#[test]
fn diagnostics_run() {
    let r = ring(ResVariant::Phi, 4, 3);
    let d = exactness_diagnostics(&r).unwrap();
    assert!(d["log2 |im d2|"] <= d["log2 |ker d1|"]);
    assert!(d["log2 |ker d1|"] <= d["log2 |D1|"]);
}
