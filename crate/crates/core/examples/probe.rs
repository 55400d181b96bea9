use arrlab_core::families;
use arrlab_core::syzygy;
use arrlab_core::FieldArrangement;

fn main() {
    // Criterion 8: tilde_A(3,4) deg_i crosscheck at s = 3d = 21, 22 (d = 7).
    let arr = families::tilde_a(3, 4).unwrap();
    let t0 = std::time::Instant::now();
    let c = syzygy::classify(&arr, None).unwrap();
    println!("tilde_A(3,4): {:?} mdr={} deg_i={} ({:?})", c.class, c.mdr, c.deg_i, t0.elapsed());
    let t0 = std::time::Instant::now();
    let chk = syzygy::deg_i_crosscheck(&arr, &c).unwrap();
    println!("deg_i check: {:?} in {:?}", chk, t0.elapsed());

    // tau stabilization for a d=9 rational instance.
    if let FieldArrangement::Rational(arr) = families::full_monomial(2).unwrap() {
        let t0 = std::time::Instant::now();
        let c = syzygy::classify(&arr, None).unwrap();
        let chk = syzygy::deg_i_crosscheck(&arr, &c).unwrap();
        println!("full_monomial(2) d=9: {:?} {:?} in {:?}", c.class, chk, t0.elapsed());
    }

    // The big one: d = 12 cyclotomic (rational-valued coefficients).
    if let FieldArrangement::Cyclotomic(3, arr) = families::full_monomial(3).unwrap() {
        let c = syzygy::classify(&arr, None).unwrap();
        let t0 = std::time::Instant::now();
        let chk = syzygy::deg_i_crosscheck(&arr, &c);
        println!("full_monomial(3) d=12 crosscheck: {:?} in {:?}", chk.map(|c| c.stabilized), t0.elapsed());
    }
}
