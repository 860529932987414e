class G29 {
    public static void main(String[] args) {
        Object lock = new Object();
        int hits = 0;
        synchronized (lock) {
            scan:
            for (int i = 0; i < 5; i++) {
                for (int j = 0; j < 5; j++) {
                    if (j > i) {
                        continue scan;
                    }
                    hits++;
                }
            }
        }
        System.out.println(hits);
    }
}
