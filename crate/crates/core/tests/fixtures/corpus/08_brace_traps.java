class Traps {
    // a stray } in a comment
    /* and { another
       } one */
    String open = "{";
    String close = "}}";
    char brace = '{';
    char quote = '\'';
    String escaped = "\"{\"";

    void m() { String s = "}"; /* } */ }
}
