//! Search for a witness that a transducer is not one-way definable, and
//! check the certificate it comes with.

use untwist::{decide_oneway_bounded, fixtures, verify_certificate, DecideOptions};

pub fn run_example() -> String {
    let mut s = String::new();
    for name in ["T_ID", "T_COPY_AB"] {
        let t = fixtures::load(name);
        let v = decide_oneway_bounded(&t, &DecideOptions::new(4)).unwrap();
        s.push_str(&format!("{name}: {}\n", v.summary()));
        if let Some(c) = &v.certificate {
            s.push_str(&c.text);
            s.push_str(&format!(
                "certificate valid: {}\n",
                verify_certificate(&t, &c.text)
            ));
        }
    }
    s
}

fn main() {
    print!("{}", run_example());
}
