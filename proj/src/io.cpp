namespace pal { int pal_stub_io = 0; }
