#include <stdio.h>
#include <string.h>
#include "tricert.h"

int main(void) {
    TricertGraph *g = NULL;
    TricertResult *r = NULL;
    char *text = NULL;
    if (tricert_graph_parse("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n5 1\n5 2\n5 3\n", &g) != TRICERT_STATUS_OK) return 10;
    if (tricert_certify(g, TRICERT_BASIC, &r) != TRICERT_STATUS_OK) return 11;
    if (tricert_result_text(r, 0, &text) != TRICERT_STATUS_OK) return 12;
    if (tricert_verify(g, text, 1) != TRICERT_STATUS_OK) return 13;
    text[0] = 'x';
    if (tricert_verify(g, text, 1) != TRICERT_STATUS_PARSE_FAILED) return 14;
    if (tricert_last_error() == NULL || strlen(tricert_last_error()) == 0) return 15;
    tricert_string_free(text);
    tricert_result_free(r);
    tricert_graph_free(g);
    puts("ok");
    return 0;
}
