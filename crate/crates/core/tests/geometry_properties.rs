use proptest::prelude::*;
use sol_curves_core::geometry::{
    connection, curvature_4tensor, frame_bracket, metric_components, metric_inner, Axis,
};
use sol_curves_core::{FrameVector, Isometry, KillingField, Point3};

fn vector() -> impl Strategy<Value = FrameVector> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b, c)| FrameVector::new(a, b, c))
}

fn small_int_vector() -> impl Strategy<Value = FrameVector> {
    (-4i32..=4, -4i32..=4, -4i32..=4).prop_map(|(a, b, c)| FrameVector::new(a.into(), b.into(), c.into()))
}

fn point() -> impl Strategy<Value = Point3> {
    (-2.0..2.0f64, -2.0..2.0f64, -1.5..1.5f64).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn isometry() -> impl Strategy<Value = Isometry> {
    prop_oneof![
        (-3.0..3.0f64).prop_map(Isometry::TranslateX),
        (-3.0..3.0f64).prop_map(Isometry::TranslateY),
        (-1.5..1.5f64).prop_map(Isometry::FlowZ),
        Just(Isometry::ReflectX),
        Just(Isometry::ReflectY),
    ]
}

/// `[X, Y]` for fields with constant frame components.
fn bracket(x: &FrameVector, y: &FrameVector) -> FrameVector {
    let mut out = FrameVector::ZERO;
    for i in Axis::ALL {
        for j in Axis::ALL {
            out = out + frame_bracket(i, j) * (x[i.index()] * y[j.index()]);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // Integer components keep every product exact, so these are equalities.
    #[test]
    fn curvature_symmetries_are_exact(
        x in small_int_vector(), y in small_int_vector(), z in small_int_vector(), w in small_int_vector(),
    ) {
        let r = curvature_4tensor(&x, &y, &z, &w);
        prop_assert_eq!(r, -curvature_4tensor(&y, &x, &z, &w));
        prop_assert_eq!(r, -curvature_4tensor(&x, &y, &w, &z));
        prop_assert_eq!(r, curvature_4tensor(&z, &w, &x, &y));
        let bianchi = curvature_4tensor(&x, &y, &z, &w)
            + curvature_4tensor(&y, &z, &x, &w)
            + curvature_4tensor(&z, &x, &y, &w);
        prop_assert_eq!(bianchi, 0.0);
    }

    #[test]
    fn connection_is_torsion_free_and_metric(x in small_int_vector(), y in small_int_vector(), z in small_int_vector()) {
        prop_assert_eq!(connection(&x, &y) - connection(&y, &x), bracket(&x, &y));
        // X<Y, Z> = 0 for constant components
        prop_assert_eq!(connection(&x, &y).dot(&z) + y.dot(&connection(&x, &z)), 0.0);
    }

    #[test]
    fn isometries_preserve_the_metric(iso in isometry(), p in point(), u in vector(), w in vector()) {
        let (u, w) = (u.0, w.0);
        let q = iso.apply(&p);
        let lhs = metric_inner(&q, iso.push_forward(u), iso.push_forward(w));
        let rhs = metric_inner(&p, u, w);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    /// `(L_V g)_{ij} = V^k ∂_k g_{ij} + g_{kj} ∂_i V^k + g_{ik} ∂_j V^k`, with every
    /// derivative taken by central differences.
    #[test]
    fn killing_fields_have_vanishing_lie_derivative(p in point()) {
        let h = 1e-5;
        let g = |p: &Point3| {
            let (a, b, c) = metric_components(p);
            [[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]]
        };
        let shift = |p: &Point3, k: usize, d: f64| {
            let mut v = [p.x, p.y, p.z];
            v[k] += d;
            Point3::new(v[0], v[1], v[2])
        };
        for id in KillingField::ALL {
            let v = id.coordinate_components(&p);
            let gp = g(&p);
            // dg[k][i][j] = ∂_k g_ij, dv[i][k] = ∂_i V^k
            let mut dg = [[[0.0; 3]; 3]; 3];
            let mut dv = [[0.0; 3]; 3];
            for k in 0..3 {
                let (gp_, gm_) = (g(&shift(&p, k, h)), g(&shift(&p, k, -h)));
                let (vp, vm) = (id.coordinate_components(&shift(&p, k, h)), id.coordinate_components(&shift(&p, k, -h)));
                for i in 0..3 {
                    for j in 0..3 {
                        dg[k][i][j] = (gp_[i][j] - gm_[i][j]) / (2.0 * h);
                    }
                    dv[k][i] = (vp[i] - vm[i]) / (2.0 * h);
                }
            }
            for i in 0..3 {
                for j in 0..3 {
                    let mut l = 0.0;
                    for k in 0..3 {
                        l += v[k] * dg[k][i][j] + gp[k][j] * dv[i][k] + gp[i][k] * dv[j][k];
                    }
                    prop_assert!(l.abs() <= 1e-6, "{} ({i},{j}) at {:?}: {l}", id.name(), p);
                }
            }
        }
    }
}
