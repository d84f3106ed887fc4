use res3::ff::Field;
use res3::surface::{recognize_doubleroot_form, recognize_star_form_with, StarStrictness};
use res3::witness::{canonical_i, parse_poly_expr};
use std::collections::HashMap;

fn main() {
    let f = Field::parse_spec("GF(3^2)/1,0,1").unwrap();
    let i = canonical_i(&f).unwrap();
    for c in [i.clone(), -&f.one()] {
        let mut consts = HashMap::new();
        consts.insert("i".to_string(), i.clone());
        consts.insert("c".to_string(), c.clone());
        let p = parse_poly_expr("(t-1)^4*(t^3-i)*(t^2+c)^2*(t+1)", &f, &consts).unwrap();
        let prof = p.multiplicity_profile().unwrap();
        let star = recognize_star_form_with(&p, StarStrictness::Strict).is_some();
        let star_relaxed = recognize_star_form_with(&p, StarStrictness::AllowTCoeff).is_some();
        let dbl = recognize_doubleroot_form(&p).is_some();
        println!("c={c}: profile {prof}, star {star} (relaxed {star_relaxed}), dblroot {dbl}");
        println!("   delta = {}", p.to_pretty());
        let e = parse_poly_expr("t^12-(1+c)*t^10+(i-1)*t^9+(c^2+c)*t^8+(c-i+1-i*c)*t^7-(c^2+i)*t^6+(i*c^2-c^2+i*c-c)*t^5+(i*c+i)*t^4+(c^2-i*c^2)*t^3-(i*c+i*c^2)*t^2+i*c^2", &f, &consts).unwrap();
        println!("   expansion match: {}", e == p);
    }
}
