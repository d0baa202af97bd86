use revcurve::dist::zoo_names;

use crate::failure::CmdResult;

pub fn list() -> CmdResult {
    for (name, description) in zoo_names() {
        println!("{name:<16} {description}");
    }
    Ok(())
}
