namespace qrank {}
