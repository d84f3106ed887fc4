// temporary probe: verify every record of the multiplicative DB
use res3::census;
use res3::witness::{parse_db, verify, VerifyStatus};

fn main() {
    let records = parse_db(census::shipped_mult_db()).expect("db parses");
    println!("{} records", records.len());
    let mut clean = 0;
    let mut tagged = 0;
    let mut bad = 0;
    for rec in &records {
        let v = verify(&rec);
        match &v.status {
            VerifyStatus::Verified if v.tags.is_empty() => clean += 1,
            VerifyStatus::Verified => {
                tagged += 1;
                let tags: Vec<String> = v.tags.iter().map(|t| t.to_string()).collect();
                println!("TAGGED {} ({}): {}", rec.id, rec.config, tags.join("; "));
            }
            VerifyStatus::Discrepancy(m) => {
                bad += 1;
                println!("DISCREPANCY {} ({}): {}", rec.id, rec.config, m);
            }
            VerifyStatus::Unparseable(m) => {
                bad += 1;
                println!("UNPARSEABLE {} ({}): {}", rec.id, rec.config, m);
            }
        }
    }
    println!("clean {clean} tagged {tagged} bad {bad}");
}
