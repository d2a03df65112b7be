namespace isopart {}
