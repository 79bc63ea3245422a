/// Laguerre polynomial `L_n(x)` (the α = 0 case of the associated family).
///
/// Upward three-term recurrence
/// `(k+1) L_{k+1} = (2k+1−x) L_k − k L_{k−1}`, stable for the orders and
/// nonnegative arguments used by the stationary Wigner functions.
pub fn laguerre(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 - x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 1.0 - x;
            for k in 1..n {
                let kf = k as f64;
                let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}
