use conelift::gallery;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gram(u: &[f64], k: usize) -> Vec<f64> {
    let mut g = vec![0.0; k*k];
    for i in 0..k { for j in 0..k { g[i*k+j] = (0..k).map(|t| u[i*k+t]*u[j*k+t]).sum(); }}
    g
}
fn entry(u: &[f64], v: &[f64], k: usize) -> f64 {
    let mut acc = 0.0;
    for a in 0..k { for b in 0..k {
        let d: f64 = (0..k).map(|t| u[t*k+a]*v[t*k+b]).sum();
        acc += d*d;
    }}
    acc
}

#[test]
#[ignore]
fn probe_psd2() {
    let m = gallery::m_matrix(5);
    let (p, q, k) = (5usize, 5usize, 2usize);
    let mf: Vec<Vec<f64>> = (0..p).map(|i| m.row(i).iter().map(|x| x.to_f64()).collect()).collect();
    let scale = 2.0f64; // entries up to 16, factors ~ sqrt
    let mut found = 0;
    for restart in 0..30u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(restart.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x5bd1_e995));
        let mut us: Vec<Vec<f64>> = (0..p).map(|_| (0..k*k).map(|_| rng.gen_range(-scale..scale)).collect()).collect();
        let mut vs: Vec<Vec<f64>> = (0..q).map(|_| (0..k*k).map(|_| rng.gen_range(-scale..scale)).collect()).collect();
        let obj = |us: &Vec<Vec<f64>>, vs: &Vec<Vec<f64>>| -> f64 {
            let mut acc = 0.0;
            for i in 0..p { for j in 0..q { let r = entry(&us[i], &vs[j], k) - mf[i][j]; acc += r*r; }}
            acc
        };

        let mut f = obj(&us, &vs);
        let mut prev_x: Option<Vec<f64>> = None;
        let mut prev_g: Option<Vec<f64>> = None;
        let mut best = f64::INFINITY; for _it in 0..40000 {
            let gv: Vec<Vec<f64>> = vs.iter().map(|v| gram(v, k)).collect();
            let gu: Vec<Vec<f64>> = us.iter().map(|u| gram(u, k)).collect();
            let mut du = vec![vec![0.0; k*k]; p];
            let mut dv = vec![vec![0.0; k*k]; q];
            for i in 0..p { for j in 0..q {
                let r = entry(&us[i], &vs[j], k) - mf[i][j];
                for a in 0..k { for b in 0..k {
                    let mut su = 0.0; let mut sv = 0.0;
                    for t in 0..k { su += gv[j][a*k+t]*us[i][t*k+b]; sv += gu[i][a*k+t]*vs[j][t*k+b]; }
                    du[i][a*k+b] += 4.0*r*su;
                    dv[j][a*k+b] += 4.0*r*sv;
                }}
            }}
            let flat_x: Vec<f64> = us.iter().flatten().chain(vs.iter().flatten()).cloned().collect();
            let flat_g: Vec<f64> = du.iter().flatten().chain(dv.iter().flatten()).cloned().collect();
            let gn: f64 = flat_g.iter().map(|x| x*x).sum();
            if gn < 1e-30 { break; }
            let step = match (&prev_x, &prev_g) {
                (Some(px), Some(pg)) => {
                    let mut sy = 0.0; let mut yy = 0.0;
                    for idx in 0..flat_x.len() {
                        let s = flat_x[idx] - px[idx];
                        let y = flat_g[idx] - pg[idx];
                        sy += s*y; yy += y*y;
                    }
                    if yy > 0.0 && sy.abs() > 1e-300 { (sy/yy).abs().clamp(1e-12, 1e3) } else { 1e-4 }
                }
                _ => 1e-5,
            };
            prev_x = Some(flat_x);
            prev_g = Some(flat_g);
            for i in 0..p { for idx in 0..k*k { us[i][idx] -= step*du[i][idx]; } }
            for j in 0..q { for idx in 0..k*k { vs[j][idx] -= step*dv[j][idx]; } }
            f = obj(&us, &vs);
            if f < best { best = f; }
            if f < 1e-22 { break; }
        }
        if restart < 8 { println!("restart {restart}: obj {f:.3e} best {best:.3e}"); }
        if best < 1e-14 { found += 1; }
    }
    println!("psd found: {found}/30");
}
