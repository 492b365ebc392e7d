namespace pal { int pal_stub_fraisse = 0; }
