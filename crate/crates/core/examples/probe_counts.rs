use quiltforge_core::seeds::discover_quilts;
use quiltforge_core::DEFAULT_RNG_SEED;

fn main() {
    let size: usize = std::env::args().nth(1).unwrap().parse().unwrap();
    let t0 = std::time::Instant::now();
    let (found, warnings) = match discover_quilts(&[size], DEFAULT_RNG_SEED) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("ERROR {e} [{:.2?}]", t0.elapsed());
            return;
        }
    };
    for f in &found {
        let types = |t: &quiltforge_core::InvolutionTriple| {
            let mut v = vec![
                t.a().count_fixed(),
                t.b().count_fixed(),
                t.c().count_fixed(),
            ];
            v.sort();
            v
        };
        eprintln!(
            "quilt {}: {} classes, seed gen fixed-counts left {:?} right {:?}",
            f.quilt.name,
            f.quilt.classes.len(),
            types(&f.seed.left),
            types(&f.seed.right),
        );
        for c in &f.quilt.classes {
            eprintln!("   class fixed-counts {:?}", types(&c.class.left));
        }
    }
    for w in warnings {
        eprintln!("warning: {w}");
    }
    eprintln!("[{:.2?}]", t0.elapsed());
}
