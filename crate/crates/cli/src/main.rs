use std::io::{IsTerminal, Read, Write};

use abduce_cli::{run_command, Status};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    // Standard input is only read when some file argument is `-`.
    let wants_stdin = argv.iter().any(|a| a == "-");
    let mut input = String::new();
    if wants_stdin && !std::io::stdin().is_terminal() {
        let _ = std::io::stdin().read_to_string(&mut input);
    }
    let r = run_command(argv, wants_stdin.then_some(input.as_str()));
    if !r.payload.is_null() {
        let text = serde_json::to_string_pretty(&r.payload).expect("plain JSON");
        // A closed pipe downstream is not worth a panic.
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    if let Some(m) = &r.message {
        if r.status == Status::Ok && r.payload.is_null() {
            let _ = write!(std::io::stdout().lock(), "{m}");
        } else {
            eprintln!("{}", m.trim_end());
        }
    }
    std::process::exit(r.exit_code());
}
