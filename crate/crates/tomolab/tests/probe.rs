use num_complex::Complex64 as C64;
use tomolab::fields::*;
use tomolab::transforms::*;
use std::f64::consts::PI;

#[test]
fn probe_moments() {
    let w = Field::from_fn(vec![default_x_axis(), default_theta_axis()], |c| {
        let d = c[0] - 2.0f64.sqrt() * c[1].cos();
        C64::new((-d * d).exp() / PI.sqrt(), 0.0)
    }).unwrap();
    let chi = characteristic_fn(&w).unwrap();
    for n in 0..=4usize {
        let a = quadrature_moment(&w, n).unwrap();
        let b = moment_from_characteristic(&chi, n).unwrap();
        println!("n={n}: err {:.3e}  (a0={:?} b0={:?})", a.sup_distance(&b).unwrap(), a.values()[0], b.values()[0]);
    }
}

#[test]
fn probe_roundtrip() {
    let w0 = Field::from_fn(vec![default_q_axis(), default_p_axis()], |c| {
        C64::new(2.0 * (-c[0]*c[0] - c[1]*c[1]).exp(), 0.0)
    }).unwrap();
    let w = radon_optical(&w0, &default_x_axis(), &default_theta_axis()).unwrap();
    let (rec, _) = inverse_radon(&w, &default_q_axis(), &default_p_axis()).unwrap();
    println!("roundtrip sup err {:.3e}", rec.sup_distance(&w0).unwrap());
    // where is the error largest?
    let mut worst = (0usize, 0.0f64);
    for (i, (a,b)) in rec.values().iter().zip(w0.values().iter()).enumerate() {
        let d = (a-b).norm();
        if d > worst.1 { worst = (i, d); }
    }
    let (iq, ip) = (worst.0 / 256, worst.0 % 256);
    println!("worst at q={} p={}: rec={:?} want={:?}", default_q_axis().at(iq), default_p_axis().at(ip), rec.values()[worst.0], w0.values()[worst.0]);
}
