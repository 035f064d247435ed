class Templates {
    static final String HTML = """
        <div class="x">{</div>
        // not a comment
        """;

    static final String JSON = "{\"k\": 1}";

    String render() { return HTML + JSON; }
}
