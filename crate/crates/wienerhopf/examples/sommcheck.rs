use std::f64::consts::{FRAC_PI_4, PI};
use wienerhopf::diffraction::{hurd_problem, senior_matrix_problem, sommerfeld_problem, PhysicalParams};
use wienerhopf::farfield::{directivity, sommerfeld_directivity_exact, theta_grid};
use wienerhopf::mapping::RationalMap;
use wienerhopf::rh::solve;

fn main() {
    let map = RationalMap::four_to_one();
    let thetas = theta_grid(0.0, 2.0 * PI, 361);

    let pp = PhysicalParams::sommerfeld(1.0, PI / 5.0);
    let dp = sommerfeld_problem(&pp, map.clone(), FRAC_PI_4).unwrap();
    let sol = solve(&dp.rh, 129).unwrap();
    let curve = directivity(&sol, &dp, &thetas).unwrap();
    let mut max_rel = 0.0f64;
    let mut max_abs_exact = 0.0f64;
    let mut max_cplx = 0.0f64;
    let mut wt = 0.0;
    for (i, &t) in thetas.iter().enumerate() {
        if curve.flags[i] { continue; }
        let ex = sommerfeld_directivity_exact(&pp, t).unwrap();
        max_abs_exact = max_abs_exact.max(ex.norm());
        let d = (curve.values[i].norm() - ex.norm()).abs();
        let dc = (curve.values[i] - ex).norm();
        if d > max_rel { max_rel = d; wt = t; }
        max_cplx = max_cplx.max(dc);
    }
    println!("sommerfeld directivity: max |D|num vs |D|exact diff = {:.3e} (at theta={:.3}), complex diff = {:.3e}, normalized = {:.3e}",
             max_rel, wt, max_cplx, max_rel / max_abs_exact);
    // spot value at pi/2
    let i90 = 90;
    println!("|D(pi/2)| numeric = {:.8}, exact = {:.8}", curve.values[i90].norm(),
             sommerfeld_directivity_exact(&pp, thetas[i90]).unwrap().norm());
    println!("D(pi/2) numeric = {:.8}, exact = {:.8}", curve.values[i90],
             sommerfeld_directivity_exact(&pp, thetas[i90]).unwrap());
    // continuity across theta = pi
    let ileft = 179; let iright = 181;
    println!("|D| near pi: {:.8} / {:.8} (exact {:.8} / {:.8})",
        curve.values[ileft].norm(), curve.values[iright].norm(),
        sommerfeld_directivity_exact(&pp, thetas[ileft]).unwrap().norm(),
        sommerfeld_directivity_exact(&pp, thetas[iright]).unwrap().norm());

    // senior / hurd stability 129 vs 257
    let spar = PhysicalParams::senior(1.0, 5.0 * PI / 6.0, 1.0 / (PI / 5.0).sin());
    let dps = senior_matrix_problem(&spar, map.clone(), FRAC_PI_4).unwrap();
    let s129 = solve(&dps.rh, 129).unwrap();
    let s257 = solve(&dps.rh, 257).unwrap();
    let c129 = directivity(&s129, &dps, &thetas).unwrap();
    let c257 = directivity(&s257, &dps, &thetas).unwrap();
    let mut dmax = 0.0f64;
    for i in 0..thetas.len() {
        if c129.flags[i] { continue; }
        dmax = dmax.max((c129.values[i] - c257.values[i]).norm());
    }
    println!("senior directivity 129-vs-257 stability: {dmax:.3e}");
    let hpar = PhysicalParams::hurd(1.0, PI / 3.0, PI / 4.0, PI / 5.0);
    let dph = hurd_problem(&hpar, map.clone(), FRAC_PI_4).unwrap();
    let h129 = solve(&dph.rh, 129).unwrap();
    let h257 = solve(&dph.rh, 257).unwrap();
    let hc129 = directivity(&h129, &dph, &thetas).unwrap();
    let hc257 = directivity(&h257, &dph, &thetas).unwrap();
    let mut hmax = 0.0f64;
    let mut nan_ct = 0;
    for i in 0..thetas.len() {
        if hc129.flags[i] { continue; }
        if !hc129.values[i].is_finite() { nan_ct += 1; }
        hmax = hmax.max((hc129.values[i] - hc257.values[i]).norm());
    }
    println!("hurd directivity 129-vs-257 stability: {hmax:.3e} (nonfinite off-flag samples: {nan_ct})");
}
