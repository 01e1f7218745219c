use stfdof_web::demo::{dof_grid, mutual_information_curve, truncation_decay};

#[test]
fn grid_has_requested_shape_and_grows_with_radius() {
    let g = dof_grid(2.4e9, 5e-4, 0.25, 1e3, 8, 6).unwrap();
    assert_eq!(g.len(), 48);
    assert!(g.iter().all(|v| v.is_finite()));
    for w in 0..6 {
        assert!(g[7 * 6 + w] > g[w]);
    }
}

#[test]
fn grid_rejects_band_wider_than_center() {
    assert!(dof_grid(1e3, 1e-3, 1.0, 2e3, 4, 4).is_err());
    assert!(dof_grid(1e9, 1e-3, 1.0, 1e3, 0, 4).is_err());
}

#[test]
fn decay_series_converges() {
    let steps = 12;
    let v = truncation_decay(6.0, 3.0, 0.3, steps).unwrap();
    let n = steps as usize + 1;
    assert_eq!(v.len(), 3 * n);
    let (emp, env) = (&v[..n], &v[n..2 * n]);
    assert!(emp[n - 1] < 1e-3 * emp[0]);
    assert!((env[0] - 2.0 / std::f64::consts::E).abs() < 1e-15);
    assert!(truncation_decay(-1.0, 0.0, 0.0, 3).is_err());
}

#[test]
fn mi_curve_is_increasing_in_rho() {
    let n = 16;
    let v = mutual_information_curve(0.25, 5e-4, 2.4e9, 1e3, 1e-2, 1e3, n).unwrap();
    assert_eq!(v.len(), 4 * n);
    let rows: Vec<&[f64]> = v.chunks(4).collect();
    assert!((rows[0][0] - 1e-2).abs() < 1e-12 && (rows[n - 1][0] - 1e3).abs() < 1e-9);
    for w in rows.windows(2) {
        assert!(w[1][1] > w[0][1]);
    }
    for r in &rows {
        assert!(r[1] <= r[3] * (1.0 + 1e-12));
    }
}

#[test]
fn wideband_mi_curve_stays_bounded_in_size() {
    let v = mutual_information_curve(0.25, 5e-4, 2.4e9, 1e9, 1e-2, 1e4, 4).unwrap();
    assert!(v.iter().all(|x| x.is_finite()));
}
