//! Parses a deck from text and runs commands on it through the CLI runner.
use gradscheme::cli::{run, Deck};

const DECK: &str = "\
algebra B over F5 dim 2 basis a,b
mul a a = b
grading G on B by Z/4 deg a=1 b=2
map neg on G over F5 = [[4,0],[0,1]]
";

fn main() -> gradscheme::Result<()> {
    let deck = Deck::parse(DECK)?;
    print!("{}", deck.print());
    let path = std::env::temp_dir().join("gradscheme-example.deck");
    std::fs::write(&path, DECK).expect("temp dir is writable");
    let deck_arg = path.to_string_lossy().into_owned();
    for cmd in [vec!["check", "G"], vec!["weyl", "G"], vec!["member", "neg"]] {
        let mut args = vec!["gradscheme", "--deck", deck_arg.as_str()];
        args.extend(cmd);
        let (code, out) = run(args);
        print!("{out}");
        println!("exit {code}");
    }
    Ok(())
}
