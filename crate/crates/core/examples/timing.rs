use std::time::Instant;
fn main() {
    let catalog = cartier::catalog::Catalog::builtin(1_000_000).unwrap();
    let ext = catalog.extension("dual-z12").unwrap();

    let t0 = Instant::now();
    let r = cartier::verify::npic_module_axioms(ext, 5, 4, 6, 1, 1_000_000).unwrap();
    println!("axioms dual-z12 D=5: {:?} pass={} [{}]", t0.elapsed(), r.pass, r.detail);

    let z12 = catalog.ring("z12").unwrap();
    let cover = catalog.cover("z12-49").unwrap();
    let t0 = Instant::now();
    let cx = cartier::cech::build_ext_complex(ext, cover, cartier::cech::CechFunctor::Npic, 4, 1_000_000).unwrap();
    let rep = cartier::cech::verify_exactness(&cx).unwrap();
    println!("cech npic dual-z12 D=4: {:?} pass={}", t0.elapsed(), rep.pass);

    let t0 = Instant::now();
    let cx = cartier::cech::build_nu_complex(z12, cover, 4, 1_000_000).unwrap();
    let rep = cartier::cech::verify_exactness(&cx).unwrap();
    println!("cech nu z12 D=4: {:?} pass={}", t0.elapsed(), rep.pass);

    let cover3 = catalog.cover("z12-349").unwrap();
    let t0 = Instant::now();
    let cx = cartier::cech::build_ext_complex(ext, cover3, cartier::cech::CechFunctor::Npic, 4, 1_000_000).unwrap();
    let rep = cartier::cech::verify_exactness(&cx).unwrap();
    println!("cech npic dual-z12 3-cover D=4: {:?} pass={}", t0.elapsed(), rep.pass);

    let t0 = Instant::now();
    let r = cartier::verify::continuity_suite(ext, 4, 1_000_000).unwrap();
    println!("continuity dual-z12 D=4 full: {:?} pass={} [{}]", t0.elapsed(), r.pass, r.detail);
}
