#include <cstdio>
int main() { std::puts("hqlab datagen: not wired up yet"); return 1; }
