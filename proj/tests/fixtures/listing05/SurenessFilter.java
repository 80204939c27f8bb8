public class SurenessFilter {
    private static void addUserToSession(final HttpServletRequest request) {
        request.getSession(true);
    }

    public void doFilter(final ServletRequest request, final ServletResponse response, final FilterChain chain) throws IOException, ServletException {
        chain.doFilter(request, response);
    }
}
