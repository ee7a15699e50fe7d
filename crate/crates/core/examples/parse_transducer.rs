//! Parse a transducer from text, validate it and print its canonical form.

use untwist::{parse_transducer, serialize_transducer, validate};

const SWAP: &str = "\
# Swaps every a and b, reading once left to right.
transducer SWAP
input a b
output a b
states q f
initial q
final f
t q |- R q \"\"
t q a R q \"b\"
t q b R q \"a\"
t q -| R f \"\"
";

pub fn run_example() -> String {
    let t = parse_transducer(SWAP).expect("valid transducer text");
    let report = validate(&t);
    format!(
        "{}states: {}, h_max: {}\nvalidation: {report}\n",
        serialize_transducer(&t),
        t.num_states(),
        t.h_max()
    )
}

fn main() {
    print!("{}", run_example());
}
