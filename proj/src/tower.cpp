namespace pal { int pal_stub_tower = 0; }
