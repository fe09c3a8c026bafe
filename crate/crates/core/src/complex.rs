use num_complex::Complex64;

/// Principal square root with the cut approached from above: a negative real
/// argument (either sign of zero imaginary part) maps to `+i√|z|`.
pub(crate) fn principal_sqrt(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            Complex64::new(z.re.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-z.re).sqrt())
        }
    } else {
        z.sqrt()
    }
}

/// `sin(βx)/β`, finite as `β → 0`.
pub(crate) fn sinc_scaled(beta: Complex64, x: f64) -> Complex64 {
    let z = beta * x;
    if z.norm() < 1e-4 {
        let z2 = z * z;
        x * (1.0 - z2 / 6.0 + z2 * z2 / 120.0)
    } else {
        (beta * x).sin() / beta
    }
}
