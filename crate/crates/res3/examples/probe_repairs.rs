use res3::ff::Field;
use res3::witness::search_multiplicative;

fn main() {
    let f3 = Field::gf3();
    let f9 = Field::with_degree(2).unwrap();
    for parts in [
        vec![4u32, 4, 1, 1, 1, 1],
        vec![3, 2, 2, 2, 1, 1, 1],
        vec![5, 4, 1, 1, 1],
        vec![4, 2, 2, 2, 1, 1],
        vec![4, 3, 2, 2, 1],
        vec![1u32; 12],
    ] {
        let t0 = std::time::Instant::now();
        let mut found = None;
        for field in [&f3, &f9] {
            if let Some(hit) = search_multiplicative(&parts, field, 1_000_000).unwrap() {
                found = Some((field.spec_string(), hit));
                break;
            }
        }
        match found {
            Some((spec, hit)) => println!(
                "{parts:?}: found over {spec} in {:?}: {}",
                t0.elapsed(),
                hit.delta.to_pretty()
            ),
            None => println!("{parts:?}: NOT FOUND ({:?})", t0.elapsed()),
        }
    }
}
