//! Exact arithmetic in Q(xi_5): the golden ratio, Galois conjugates and the
//! double-precision embedding.

use stardual::cyclotomic::{cyclotomic_polynomial, CycNum};

fn main() {
    let n = 5;
    let xi = CycNum::xi_pow(n, 1);
    // tau = 1 + xi + xi^4
    let tau = &(&CycNum::one(n) + &xi) + &CycNum::xi_pow(n, 4);
    println!("Phi_5 = {:?}", cyclotomic_polynomial(n).coeffs());
    println!("tau = {tau} ~ {:.12}", tau.embed().re);
    println!("tau^2 - tau - 1 = {}", &(&(&tau * &tau) - &tau) - &CycNum::one(n));
    println!("1/tau = {}", tau.inverse().unwrap());
    for k in [2, 3, 4] {
        let g = tau.galois(k).unwrap();
        println!("xi -> xi^{k}: tau -> {g} ~ {:.12}", g.embed().re);
    }
    let z = &xi + &CycNum::from_ratio(n, 1, 3);
    println!("z = {z}, |z|^2 = {} ~ {:.12}", z.norm_sq(), z.abs().powi(2));
    // xi^5 reduces to 1
    println!("xi^5 = {}", xi.pow(5).unwrap());
}
