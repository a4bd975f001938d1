//! Prints the generalized-join input describing `WΓ(Z_n)`, for `wzd join`.
//!
//! cargo run -p wzd-core --example upsilon_input -- 18 > upsilon18.json

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(18);
    match wzd_core::JoinInput::upsilon(n) {
        Ok(input) => println!("{}", input.to_json()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
