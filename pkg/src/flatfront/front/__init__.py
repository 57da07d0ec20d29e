# path: src/flatfront/front/__init__.py
