#include <cstdio>
int main() { std::puts("hyfr"); return 0; }
