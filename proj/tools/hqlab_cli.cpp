#include <cstdio>
int main() { std::puts("hqlab cli: not wired up yet"); return 1; }
