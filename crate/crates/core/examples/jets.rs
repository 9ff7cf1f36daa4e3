//! Second-order jets against the finite-difference oracle.
//!
//! Run with `cargo run --example jets`.

#![allow(clippy::needless_range_loop)]

use paranull::numerics::{fd_derivative, FdDerivative, Jet2, Scalar};

fn f<S: Scalar>(x: &[S]) -> S {
    (x[0] * x[1]).sin() + (x[0] * x[0] + x[1] * x[1] + 1.0).sqrt() * x[2].exp()
}

fn main() -> paranull::Result<()> {
    let x = [0.3, -0.7, 0.2];
    let jet = f(&Jet2::variables(&x));
    println!("f(x)      = {:.12}", jet.value());
    println!("jet grad  = {:?}", jet.grad());

    let FdDerivative::Gradient(g) = fd_derivative(|y| Ok(f(y)), &x, 1, None)? else {
        unreachable!()
    };
    println!("fd grad   = {:?} (error estimate {:.1e})", g.value, g.error);

    let FdDerivative::Hessian(h) = fd_derivative(|y| Ok(f(y)), &x, 2, None)? else {
        unreachable!()
    };
    let jh = jet.hess();
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((jh[i][j] - h.value[i][j]).abs());
        }
    }
    println!(
        "max |jet hess - fd hess| = {worst:.2e} (fd error estimate {:.1e})",
        h.error
    );
    Ok(())
}
