// Nothing declared here.
/* Just commentary
   across lines. */
