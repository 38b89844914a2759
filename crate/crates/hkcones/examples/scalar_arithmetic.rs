//! Exact arithmetic in Q and Q(sqrt m): construction, comparison, and
//! quadratic root extraction.

use hkcones::scalar::{quad_roots, rat, rat_int, QuadScalar};

fn main() {
    // 1/2 + (3/4) sqrt 5
    let x = QuadScalar::new(rat(1, 2), rat(3, 4), 5);
    let y = QuadScalar::new(rat(-2, 1), rat(1, 1), 5);
    println!("x        = {}", x);
    println!("y        = {}", y);
    println!("x + y    = {}", x.clone() + y.clone());
    println!("x * y    = {}", x.clone() * y.clone());
    println!("1 / x    = {}", x.inverse());
    println!("x > y    : {}", x > y);
    println!("approx x = {}", x.approx_f64());

    // Sign decisions are exact even when the value is tiny:
    // 665857/470832 is a continued-fraction convergent of sqrt 2.
    let near = QuadScalar::new(rat(665857, 470832), rat(-1, 1), 2);
    println!("665857/470832 - sqrt 2 is positive: {}", near.is_positive());

    // Roots of t^2 + 6t + 3 = 0, the slope equation of a positive-cone
    // boundary. Irrational roots come back in Q(sqrt 6).
    let (r1, r2) = quad_roots(&rat_int(1), &rat_int(6), &rat_int(3))
        .unwrap()
        .unwrap();
    println!("roots of t^2+6t+3: {} and {}", r1, r2);

    // A perfect-square discriminant collapses to rationals.
    let (s1, s2) = quad_roots(&rat_int(1), &rat_int(-3), &rat_int(2))
        .unwrap()
        .unwrap();
    println!("roots of t^2-3t+2: {} and {}", s1, s2);
}
